#!/usr/bin/env python3
"""
Print the logger names accepted by RELAY_PRICING_MODULE_LEVELS.
"""

from src.logging.core.enums import EnvironmentVariable
from src.logging.core.logger_names import LoggerNames


def main() -> None:
    variable = EnvironmentVariable.MODULE_LEVELS.value
    print(f"Logger names for {variable}:")
    print()
    print("Format examples:")
    print(f'export {variable}="{LoggerNames.GAME}=debug"')
    print(f'export {variable}="{LoggerNames.SOCIAL_OPTIMUM}=debug,{LoggerNames.ANALYSIS}=warning"')
    print()
    for name in sorted(LoggerNames.get_all_loggers()):
        print(f"  {name}")
    print()


if __name__ == "__main__":
    main()
