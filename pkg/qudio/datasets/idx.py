"""
idx.py

Reader of the IDX binary format in which MNIST is distributed. Files may be gzip compressed or raw.
"""

from dataclasses import dataclass
import gzip
import os
import urllib.request
import numpy as np

from .. import config
from ..utils import Logger

IDX_IMAGES_MAGIC = 0x00000803 # unsigned bytes, 3 dimensions
IDX_LABELS_MAGIC = 0x00000801 # unsigned bytes, 1 dimension
IMAGE_SIZE = 28

class IDXFormatError(Exception):
    def __init__(self, filepath : str, reason : str):
        super().__init__(f"Invalid IDX file '{filepath}': {reason}")

class IDXLengthError(Exception):
    def __init__(self, filepath : str, expected : int, got : int):
        super().__init__(f"Truncated IDX file '{filepath}': expected {expected} bytes of payload, got {got}")

@dataclass(frozen=True, eq=False)
class RawExample:
    """
    A 28x28 grayscale image with pixel values in [0,255] and its digit label
    """
    pixels : np.ndarray
    label : int

def _read_bytes(filepath : str) -> bytes:
    with open(filepath, "rb") as f:
        head = f.read(2)
    opener = gzip.open if head == b"\x1f\x8b" else open
    with opener(filepath, "rb") as f:
        return f.read()

def read_idx(filepath : str, expected_magic : int = None) -> np.ndarray:
    """
    Reads an IDX file of unsigned bytes

    Args:
        filepath (str): path to the file (raw or gzip compressed)
        expected_magic (int, optional): if provided, the magic number of the file should be equal to this value. Defaults to None.

    Raises:
        IDXFormatError: bad magic number or header
        IDXLengthError: payload shorter or longer than announced by the header

    Returns:
        np.ndarray: array of np.uint8 with the dimensions given by the header
    """
    data = _read_bytes(filepath)
    if len(data) < 4:
        raise IDXFormatError(filepath, "file too short to contain a header")
    magic = int.from_bytes(data[:4], "big")
    if data[0] != 0 or data[1] != 0 or data[2] != 0x08:
        raise IDXFormatError(filepath, f"magic number {magic:#010x} does not describe unsigned bytes")
    if expected_magic is not None and magic != expected_magic:
        raise IDXFormatError(filepath, f"magic number {magic:#010x}, expected {expected_magic:#010x}")
    ndim = data[3]
    header = 4 + 4*ndim
    if len(data) < header:
        raise IDXFormatError(filepath, "truncated header")
    dims = tuple(int.from_bytes(data[4+4*i : 8+4*i], "big") for i in range(ndim))
    expected = int(np.prod(dims))
    payload = len(data) - header
    if payload != expected:
        raise IDXLengthError(filepath, expected, payload)
    return np.frombuffer(data, dtype=np.uint8, offset=header).reshape(dims)

def load_idx(images_path : str, labels_path : str) -> list:
    """
    Loads pairs of images and labels from two IDX files

    Args:
        images_path (str): path to the image file (magic 0x00000803)
        labels_path (str): path to the label file (magic 0x00000801)

    Raises:
        IDXFormatError: bad magic, images not 28x28, or different numbers of images and labels
        IDXLengthError: truncated file

    Returns:
        list: RawExample objects in file order
    """
    images = read_idx(images_path, IDX_IMAGES_MAGIC)
    labels = read_idx(labels_path, IDX_LABELS_MAGIC)
    if images.shape[1:] != (IMAGE_SIZE, IMAGE_SIZE):
        raise IDXFormatError(images_path, f"images have shape {images.shape[1:]}, expected ({IMAGE_SIZE}, {IMAGE_SIZE})")
    if images.shape[0] != labels.shape[0]:
        raise IDXFormatError(labels_path, f"{labels.shape[0]} labels for {images.shape[0]} images")
    return [RawExample(images[i], int(labels[i])) for i in range(images.shape[0])]

def locate_mnist_file(directory : str, name : str) -> str:
    """Path of a MNIST file in a directory, raw or with the .gz extension"""
    for candidate in (name, name + ".gz"):
        path = os.path.join(directory, candidate)
        if os.path.isfile(path):
            return path
    raise FileNotFoundError(f"MNIST file '{name}' (or '{name}.gz') not found in '{directory}'")

def load_mnist(directory : str) -> tuple:
    """
    Loads the train and test splits of MNIST from the four standard files

    Args:
        directory (str): directory containing the files

    Raises:
        FileNotFoundError: if one of the files is absent

    Returns:
        (list, list): train and test RawExample lists
    """
    path = lambda key : locate_mnist_file(directory, config.MNIST_FILES[key])
    train = load_idx(path("train_images"), path("train_labels"))
    test = load_idx(path("test_images"), path("test_labels"))
    return train, test

def fetch_mnist(directory : str, url : str = config.MNIST_URL, verbose : bool = True) -> str:
    """
    Downloads the gzip compressed MNIST files that are not already present in a directory

    Args:
        directory (str): target directory. Created if needed.
        url (str, optional): base url of the mirror. Defaults to config.MNIST_URL.
        verbose (bool, optional): Defaults to True.

    Returns:
        str: the directory
    """
    logger = Logger("MNIST", verbose)
    os.makedirs(directory, exist_ok=True)
    for name in config.MNIST_FILES.values():
        try:
            path = locate_mnist_file(directory, name)
            logger.log(f"Found {path}")
        except FileNotFoundError:
            target = os.path.join(directory, name + ".gz")
            logger.log(f"Downloading {url + name}.gz")
            urllib.request.urlretrieve(url + name + ".gz", target)
    return directory
