#!/usr/bin/env python3
"""
Logger names for the relay_pricing package.

Names follow relay_pricing.<package>.<module> so that levels can be set
for a whole solver family at once, e.g. relay_pricing.game=debug.
"""


class LoggerNames:
    """Registry of the logger names used throughout the package."""

    APP_ROOT = "relay_pricing"

    CONFIGURATION = f"{APP_ROOT}.configuration"
    CLI = f"{APP_ROOT}.cli"

    NETWORK = f"{APP_ROOT}.network"
    TOPOLOGY = f"{NETWORK}.topology"
    VALIDATION = f"{NETWORK}.validation"

    MARGINALS = f"{APP_ROOT}.marginals"
    FUNCTIONS = f"{MARGINALS}.functions"
    CONVOLUTION = f"{MARGINALS}.convolution"
    SAMPLING = f"{MARGINALS}.sampling"

    FLOW = f"{APP_ROOT}.flow"
    ROUTING = f"{FLOW}.routing"
    ALLOCATION = f"{FLOW}.allocation"
    SOCIAL_OPTIMUM = f"{FLOW}.social_optimum"

    GAME = f"{APP_ROOT}.game"
    PROFILE = f"{GAME}.profile"
    LOCAL_INFO = f"{GAME}.local_info"
    BEST_RESPONSE = f"{GAME}.best_response"
    CONSTRUCTION = f"{GAME}.construction"
    VERIFICATION = f"{GAME}.verification"

    ANALYSIS = f"{APP_ROOT}.analysis"
    CLASSIFICATION = f"{ANALYSIS}.classification"
    POA = f"{ANALYSIS}.poa"
    ELASTIC = f"{ANALYSIS}.elastic"
    EXAMPLES = f"{ANALYSIS}.examples"
    GENERATORS = f"{ANALYSIS}.generators"
    PROPERTIES = f"{ANALYSIS}.properties"
    SWEEP = f"{ANALYSIS}.sweep"

    SCENARIO = f"{APP_ROOT}.scenario"
    LOADER = f"{SCENARIO}.loader"
    COSTS = f"{SCENARIO}.costs"
    PROFILES = f"{SCENARIO}.profiles"
    FILES = f"{SCENARIO}.files"

    REPORTING = f"{APP_ROOT}.reporting"

    @classmethod
    def get_all_loggers(cls) -> list[str]:
        """Get all defined logger names."""
        return [
            value
            for key, value in vars(cls).items()
            if isinstance(value, str) and key.isupper()
        ]

    @classmethod
    def is_valid_logger_name(cls, name: str) -> bool:
        """Check if a logger name belongs to the package."""
        return name == cls.APP_ROOT or name.startswith(f"{cls.APP_ROOT}.")
