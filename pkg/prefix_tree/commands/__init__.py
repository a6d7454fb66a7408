from .codec import *
from .experiments import *
from .tables import *
