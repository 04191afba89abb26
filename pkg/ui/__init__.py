# UI presentation layer modules
