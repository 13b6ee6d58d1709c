# Models module for the genus counting toolkit
