"""Edge-flip reconfiguration of spanning trees under leaf-count constraints.

Subpackages:
  graph       core types (graphs, trees, flips, certificates)
  oracle      exhaustive ground-truth search engines
  solvers     polynomial-time deciders with witness extraction
  reductions  hardness-reduction constructors and compilers
  gen         seeded random instance generators
  jsonio      JSON instance schema
  cli         command-line front end
"""

__version__ = "0.1.0"
