import logging
import sys
from .commands import error_document, execute, read_definitions, render
from .exceptions import DefinitionFileNotFound
from .parse_arguments import parse_arguments
from typing import List, Optional


_logger = logging.getLogger(__name__)


def main(argv: Optional[List[str]] = None) -> int:
    (
        command,
        definitions_path,
        options,
        output_path,
        output_format
    ) = parse_arguments(argv)

    try:
        source = None
        if definitions_path is not None:
            source = read_definitions(definitions_path)
            _logger.info(f"Loaded {definitions_path}")
    except DefinitionFileNotFound as error:
        _logger.warning(str(error))
        document, exit_code = error_document(error)
    else:
        document, exit_code = execute(command, source, options)
    text = render(document, output_format)

    if output_path is not None:
        with open(output_path, "w", encoding="utf-8") as file:
            file.write(text)
        _logger.info(f"Wrote {output_path}")
    else:
        sys.stdout.write(text)

    return exit_code


if __name__ == "__main__":
    sys.exit(main())
