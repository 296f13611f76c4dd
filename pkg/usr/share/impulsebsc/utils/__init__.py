#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Utils module for ImpulseBSC."""

from utils.i18n import _

__all__ = ["_"]
