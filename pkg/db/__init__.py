# DB package
