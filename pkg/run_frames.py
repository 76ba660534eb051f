#!/usr/bin/env python3

"""run_frames

Front end to the frames package: the same subcommands as the installed
nst_frames script, runnable from a source checkout.

    ./run_frames.py gram --p 1.0 --jmax 5 --out results/gram

"""

import sys

from nstFrames.cli import main

sys.exit(main())
