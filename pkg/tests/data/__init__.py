from .states import *
from .hamiltonians import *
from .mnist import *
