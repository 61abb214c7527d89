"""
First homology of a plumbed manifold straight from its graph

H1 = Z^(2 sum g_v + b1) + coker(A), A the plumbing matrix. Used as the
independent reference the diagram homology is compared against.
"""

from algebra.exact_linalg import H1Summary, cokernel, smith_normal_form
from graph.plumbing_graph import betti1, intersection_matrix


def oracle_h1(graph):
    """
    Args:
        graph: PlumbingGraph

    Returns:
        H1Summary: free rank 2*sum(g) + betti1 + corank(A), torsion of coker(A)
    """
    a = cokernel(intersection_matrix(graph))
    free = 2 * sum(v.genus for v in graph.vertices) + betti1(graph) + a.free_rank
    return H1Summary(free_rank=free, torsion=a.torsion)


def oracle_snf(graph):
    """Invariant factors of the plumbing matrix"""
    return smith_normal_form(intersection_matrix(graph))
