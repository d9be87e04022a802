"""FOR/WHILE toy-language toolchain: parsing, interpretation, program
transformations, Goedel numbering and the universal program."""

try:
    from ._loopwhile import *  # noqa: F401,F403  (installed layout)
    from ._loopwhile import __doc__  # noqa: F401
except ImportError:  # build-tree layout: module sits next to the package
    from _loopwhile import *  # noqa: F401,F403
    from _loopwhile import __doc__  # noqa: F401
