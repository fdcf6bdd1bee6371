"""
Structure-analysis packages: operators (symspec), probability algebras
(maharam), automorphism approximations (apra) and randomizations.
"""
