import sys

from noma_outage.main import main

sys.exit(main())
