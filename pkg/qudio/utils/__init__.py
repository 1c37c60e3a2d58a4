from .utilities import *
from .argument_check import *
from . import maths
from .maths import near_equal_split, clamp_probability
from . import rng
from .rng import derive_rng, node_rng, init_rng, eval_rng
