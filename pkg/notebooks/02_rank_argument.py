"""
One instance of the rank argument, step by step
===============================================

q = 2, F = b^2, n = 4: build Phi, mu on Phi^-1(0), the indicator
polynomial P, and the matrix P(u - v) on a free set.
"""

from fractions import Fraction

from fqsarkozy.clpcore import build_mu, build_P, degree_audit, pointwise_identity_check
from fqsarkozy.extremal import forbidden_set, max_free_set
from fqsarkozy.field import field_of_order
from fqsarkozy.parsing import parse_polynomial
from fqsarkozy.phimap import build_phi, image, preimage_zero
from fqsarkozy.rankcert import certify, count_monomials, half_degree_split

spec = field_of_order(2)
F = parse_polynomial("b^2", spec)
n = 4

phi = build_phi(spec, F, n)
print("m =", phi.m, " phi =", phi.phis)
print("image of Phi:", image(phi))

S = preimage_zero(phi)
mu = build_mu(spec, S)
print("Phi^-1(0) =", S, " mu =", mu.mu, " witness sum =", mu.witness_sum)

ind = build_P(phi, mu)
print("P =", ind.P, " deg P =", ind.degree, "<=", ind.claimed_degree_bound)
print("identity holds:", pointwise_identity_check(ind).passed)
print("degree audit:", degree_audit(ind, ind.d).passed)

# a maximum free set and its certificate
A = max_free_set(forbidden_set("poly", spec, F, n)).witness
cert = certify(ind.P, A)
print("A =", A, " rank =", cert.rank, " 2T =", cert.bound, " diagonal:", cert.diagonal_ok)

# the half-degree split that gives rank <= 2T
split = half_degree_split(ind.P)
print("families:", len(split.u_side), len(split.v_side), " verified:", split.verified)
print("2 * count_monomials =", 2 * count_monomials(n, 2, Fraction(ind.degree, 2)))
