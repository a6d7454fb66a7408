from . import analytic, codec, commands, trie
from .bloom import *
from .cli import *
from .errors import *
from .hashstream import *
from .simulate import *
from .utils import *
