# Plotting module
