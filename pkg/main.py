import sys
from pathlib import Path

# run from a checkout without installing
sys.path.insert(0, str(Path(__file__).parent / "src"))

from charvar_epoly.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
