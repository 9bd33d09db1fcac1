__version__ = "0.1.0.dev0"

from . import connection  # noqa: F401
from . import exprfield  # noqa: F401
from . import flatmaps  # noqa: F401
from . import helpers  # noqa: F401
from . import hermitian  # noqa: F401
from . import levi  # noqa: F401
from . import symplin  # noqa: F401
from . import twistor  # noqa: F401
from .connection import SymplecticConnection  # noqa: F401
from .connection import preset  # noqa: F401
from .exprfield import parse_expr  # noqa: F401
from .flatmaps import ConstantOneForm  # noqa: F401
from .levi import ExhaustionSpec  # noqa: F401
from .options import MetricParams  # noqa: F401
from .options import Sampling  # noqa: F401
from .options import Tolerances  # noqa: F401
from .processing import VerificationReport  # noqa: F401
from .symplin import CompatJ  # noqa: F401
from .twistor import TwistorPoint  # noqa: F401
from .twistor import TwistorTangent  # noqa: F401
