# generated by setup.py
version = "0.1.0"
