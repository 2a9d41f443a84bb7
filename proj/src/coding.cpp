namespace icc {}
