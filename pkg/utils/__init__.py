# Common utility modules
