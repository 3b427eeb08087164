import sys
import functools
import logging
from typing import Any, Callable

import typer

from tessfold.exceptions import AnalysisRefusal, NumericalFailure, TessfoldException, UsageError

EXIT_USAGE_ERROR = 1
EXIT_ANALYSIS_REFUSAL = 2
EXIT_NUMERICAL_FAILURE = 3
EXIT_UNHANDLED = 13


def exit_code_for(exception: TessfoldException) -> int:
    """ Map a tessfold exception to the command line exit code """
    if isinstance(exception, AnalysisRefusal):
        return EXIT_ANALYSIS_REFUSAL
    if isinstance(exception, NumericalFailure):
        return EXIT_NUMERICAL_FAILURE
    if isinstance(exception, UsageError):
        return EXIT_USAGE_ERROR
    return EXIT_USAGE_ERROR


def catch_tessfold_exceptions(func: Callable[..., Any]) -> Any:
    """ Decorator function to catch exceptions, print an error message and exit with the mapped code """
    @functools.wraps(func)
    def catch_exceptions(*args: Any, **kwargs: Any) -> Any:
        try:
            func(*args, **kwargs)
        except TessfoldException as tessfold_exception:
            typer.echo(f"Error: {str(tessfold_exception)}")
            sys.exit(exit_code_for(tessfold_exception))
        except Exception as exception:
            typer.echo(f"Unhandled exception: {repr(exception)}")
            sys.exit(EXIT_UNHANDLED)

    return catch_exceptions


def log_function(func: Callable[..., Any]) -> Any:
    """ Decorator function to log entry and exit of the method/function """
    @functools.wraps(func)
    def log_function_name(*args: Any, **kwargs: Any) -> Any:
        logging.debug("Method '%s' has been entered.", func.__name__)
        resp = func(*args, **kwargs)
        logging.debug("Method '%s' has been exited.", func.__name__)
        return resp

    return log_function_name
