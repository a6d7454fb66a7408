from .model import *
from .range_coder import *
from .rate import *
from .tree_codec import *
