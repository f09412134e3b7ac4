import argparse
import json
import os

CONFIG_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.json")
SEED_ENV = "LIECOMM_SEED"


def load_defaults_config():
    """
    Load defaults for run args.
    """
    with open(CONFIG_PATH, "r") as f:
        return json.load(f)


def add_dict_to_argparser(parser, default_dict):
    for k, v in default_dict.items():
        flags = [f"--{k}"]
        if "_" in k:
            flags.append(f"--{k.replace('_', '-')}")
        if isinstance(v, bool):
            # toggles: --k turns it on, --no-k off
            parser.add_argument(*flags, dest=k, default=v, action=argparse.BooleanOptionalAction)
            continue
        v_type = str if v is None else type(v)
        parser.add_argument(*flags, dest=k, default=v, type=v_type)


def resolve_seed(args):
    """The generic-point seed: an explicit --seed, then LIECOMM_SEED, then the config value."""
    if args.seed is not None:
        return args.seed
    value = os.environ.get(SEED_ENV)
    if value:
        try:
            args.seed = int(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{SEED_ENV} must be an integer, got {value!r}") from None
    else:
        args.seed = load_defaults_config()["seed"]
    return args.seed


def save_args(args, out_dir):
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "args.json"), "w") as f:
        json.dump(args.__dict__, f, indent=2)
