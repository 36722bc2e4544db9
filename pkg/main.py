"""
Entry point for grs3d: python main.py <command> [options]
"""

from src.grs3d.cli import main

if __name__ == "__main__":
    main()
