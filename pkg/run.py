#!/usr/bin/env python
import os
import sys
import logging

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.FileHandler(os.environ.get("COLLATZ_REARRANGE_LOG", "collatz_rearrange.log")),
        logging.StreamHandler()
    ]
)
logger = logging.getLogger(__name__)

# Make the src package importable when run from any directory
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli import run_command


def main():
    """
    Main function
    """
    logger.debug(f"Starting collatz-rearrange with arguments {sys.argv[1:]}")
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
