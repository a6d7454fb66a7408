from .build import *
from .node import *
from .query import *
