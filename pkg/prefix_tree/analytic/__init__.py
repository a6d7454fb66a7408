from .depth import *
from .entropy import *
from .evaluate import *
from .false_positive import *
from .kernels import *
from .params import *
from .quantity_data import *
from .split import *
from .tables import *
