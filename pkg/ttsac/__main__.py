"""Allow ``python -m ttsac``."""

import sys

from ttsac.main import main

sys.exit(main())
