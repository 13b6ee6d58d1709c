# CLI module for the genus counting toolkit
