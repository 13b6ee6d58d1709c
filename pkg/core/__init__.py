# Core module for the genus counting toolkit
