# -*- coding: utf-8 -*-

__author__ = 'Joel Bender'
__email__ = 'joel@carrickbender.com'
__version__ = '0.1.0'

from . import errors
from . import filters
from . import wpt
from . import gegenbauer
from . import bestbasis
from . import simulate
from . import analysis
