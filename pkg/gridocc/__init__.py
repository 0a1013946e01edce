"""
GridOCC - One-class fault recognition toolkit
Learned heterogeneous dissimilarity, k-medoids decision regions and fuzzy reliability scores
"""
__version__ = "1.0.0"
__author__ = "GridOCC Team"
__description__ = "One-class classification over heterogeneous fault patterns"
