# Genus Counting Toolkit
