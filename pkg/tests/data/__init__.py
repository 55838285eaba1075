"""
Shared networks, link costs and profiles for the unit tests.

Data is organized by the game it describes rather than by the module under
test, so the same oligopoly feeds the flow, game and analysis tests.
"""
