#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Message catalog lookup for user-facing CLI text."""

import gettext
import os

TEXTDOMAIN = "impulsebsc"

# Priority: 1) locale dir next to the installed app, 2) system install
locale_dir = "/usr/share/locale"

script_dir = os.path.dirname(os.path.abspath(__file__))  # utils/
app_dir = os.path.dirname(script_dir)  # impulsebsc/
share_dir = os.path.dirname(app_dir)  # share/
local_locale = os.path.join(share_dir, "locale")

if os.path.isdir(local_locale):
    locale_dir = local_locale

# A private translation object keeps the global textdomain untouched
_translation = gettext.translation(TEXTDOMAIN, locale_dir, fallback=True)

_ = _translation.gettext
