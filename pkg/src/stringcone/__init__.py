"""String cones of reduced words: pseudoline arrangements, Gleizer-Postnikov
paths, cluster superpotentials and the exact polyhedral checks relating them."""

__version__ = "0.1.0"
