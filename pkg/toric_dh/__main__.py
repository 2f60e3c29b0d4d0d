"""Allow running as `python -m toric_dh`."""

from .cli import cli

if __name__ == "__main__":
    cli(prog_name="toric-dh")
