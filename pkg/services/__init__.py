# Services module for the genus counting toolkit
