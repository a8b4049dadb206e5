# Copyright 2026 The ipk Authors
# SPDX-License-Identifier: Apache-2.0
"""Inverse-power Boltzmann kernel toolkit."""

from ._ipk import *  # noqa: F401,F403
from ._ipk import __version__  # noqa: F401
