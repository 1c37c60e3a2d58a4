from .eigensolve import *
from .sgd import SGDParameters, sgd_step, lr_schedule
