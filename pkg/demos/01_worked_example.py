"""
A rank-2 generalized cluster pattern, step by step
==================================================

Exchange matrix B0 = [[0, -1], [1, 0]], degrees R = diag(2, 1), skew-balance
S = diag(1, 2) and a single interior coefficient z.  The first exchange
polynomial has degree 2, so the first mutation produces
x1' = (1 + z yhat1 + yhat1^2) / x1.
"""

from gencluster import MutationKit, with_principal_coefficients
from gencluster.jacobian import h_matrix_chain, h_matrix_direct, recover_B_from_cluster, verify_cluster_formula

kit = MutationKit.formal([2, 1], {(0, 1): "z"})
p = with_principal_coefficients([[0, -1], [1, 0]], kit, S=[1, 2])
print(p)

# Walk 1, 2 (directions are 0-based in Python, 1-based on the command line).
s = p.seed([0, 1])
for i, x in enumerate(s.X, 1):
    print(f"x{i};t =", x)
print("y;t =", [str(y) for y in s.Y])
print("B_t =", s.B.tolist())

# The logarithmic Jacobian H, once by differentiation and once as a product of
# one-step matrices.  They agree entry by entry.
H = h_matrix_direct(s)
print("H =")
print(H)
assert H == h_matrix_chain(p, [0, 1])

# H carries B_t R^-1 S^-1 to B0 R^-1 S^-1 and has determinant (-1)^2.
report = verify_cluster_formula(H, s.B, p.B0, p.R, p.S, m=2)
print("cluster formula:", report.to_json())
print("det H =", H.det())

# The exchange matrix is determined by the cluster alone.
print("B recovered from the cluster:", recover_B_from_cluster(s.X, p).tolist())
