__version__ = "0.4.0"
version_info = tuple(int(v) if v.isdigit() else v for v in __version__.split("."))
