"""Allow `python -m chamberlens` as an alternative to the console script."""

from chamberlens.cli import entrypoint

if __name__ == "__main__":
    entrypoint()
