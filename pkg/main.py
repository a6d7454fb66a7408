import sys

from dotenv import load_dotenv

from prefix_tree import HashTreeCli, PrefixTreeError, format_error, log

load_dotenv(override=True)


def main(argv=None):
    initial_extensions = [
        "tables",
        "codec",
        "experiments",
    ]

    try:
        cli = HashTreeCli(initial_extensions=initial_extensions)
    except PrefixTreeError as e:
        log(format_error("startup", e))
        return e.exit_code
    return cli.run(argv)


if __name__ == "__main__":
    sys.exit(main())
