import os
import sys


def resource_path(relative_path):
    """ Get absolute path to a bundled data file, works for dev and for PyInstaller """
    # PyInstaller unpacks data files into _MEIPASS
    base_path = getattr(sys, '_MEIPASS', None)
    if base_path is None:
        base_path = os.path.dirname(os.path.abspath(__file__))

    return os.path.join(base_path, relative_path)
