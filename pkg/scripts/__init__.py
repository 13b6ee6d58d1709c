# Scripts module for the genus counting toolkit
