# Repositories module for the genus counting toolkit
