# Tests package for argstrength
