from enum import Enum


class Messages(Enum):
    REPORT_SUCCESS = "Report produced successfully."
    VALIDATION_FAILURE = "One or more checks failed validation."
    PARAMETER_FAILURE = "Parameter outside the admissible region."
    INTERNAL_FAILURE = "An unexpected error occurred."
    UNKNOWN_COMMAND = "Unknown subcommand."
