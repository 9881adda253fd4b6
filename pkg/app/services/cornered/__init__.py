"""
Cornered pieces: the right/left algebra-modules and the four quadrant 2-modules
"""
