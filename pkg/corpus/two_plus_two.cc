add 2 2
