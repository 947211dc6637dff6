"""hessex: exact computations for type-A Hessenberg varieties.

Submodules: exactalg (polynomials and matrices), hessenberg (functions and
permutations), charts (chart matrices and ideal generators), w0chart
(elimination structure at the longest permutation), schubert (diagrams and
flag chains), degree (volume polynomials and fixed-point sums), nokounkov
(the surface Newton-Okounkov polygon), cli (command-line front end).
"""

__version__ = "0.1.0"
