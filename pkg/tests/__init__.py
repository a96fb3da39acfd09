# -*- coding: utf-8 -*-

from . import test_errors
from . import test_filters
from . import test_wpt
from . import test_gegenbauer
from . import test_bestbasis
from . import test_simulate
from . import test_analysis
from . import test_cli
