"""
Algebra of planar grid diagrams: strands algebras, nilCoxeter 2-algebra, bordered and cornered pieces
"""
