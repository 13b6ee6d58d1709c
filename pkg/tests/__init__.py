# Tests module for the genus counting toolkit
