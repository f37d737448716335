# utils/__init__.py
from .config_loader import load_config, AppConfig
from .la_parser import parse_program, parse_term, parse_type, load_program
from .la_printer import format_program, format_term, format_type, format_lc_term
