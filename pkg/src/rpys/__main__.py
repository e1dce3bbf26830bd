"""Allow running as `python -m rpys`."""

from rpys.app import main

if __name__ == "__main__":
    main()
