import hashlib
from tqdm import tqdm

from .argument_check import *

def file_digest(filepath : str, chunk_size : int = 1 << 16) -> str:
    """
    Computes the sha256 digest of a file on the disk

    Args:
        filepath (str): path to the file
        chunk_size (int, optional): size of the chunks read from the file. Defaults to 64kB.

    Returns:
        str: hexadecimal digest
    """
    h = hashlib.sha256()
    with open(filepath, "rb") as f:
        for chunk in iter(lambda : f.read(chunk_size), b""):
            h.update(chunk)
    return h.hexdigest()

class Logger:
    def __init__(self, name = "Logger", verbose=True):
        self.name = name
        self.verbose = verbose

    def log(self, *messages):
        if self.verbose:
            tqdm.write(" ".join(str(m) for m in (f"[{self.name}]",) + messages))

    def warn(self, *messages):
        tqdm.write(" ".join(str(m) for m in (f"[{self.name}] WARNING",) + messages))
