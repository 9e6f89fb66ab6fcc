"""
A program given by a system-environment model
=============================================

Here a program is a unitary U on system (x) environment, followed by a projector P,
starting from a fixed environment state e0 and tracing the environment out
at the end. The same program has a Kraus form, and both forms give the
same weakest precondition.
"""
import numpy as np

from qwp import extract_kraus, random_model, se_wp, wp
from qwp.predicates import random_density, random_predicate
from qwp.sysenv import se_apply_matrix

model = random_model(sys_dim=2, env_dim=3, seed=4)
channel = extract_kraus(model)
print(f"system dim {model.sys_dim}, environment dim {model.env_dim}")
print(f"rank of P: {round(np.trace(model.P).real)}, Kraus operators kept: {len(channel)}")

M = random_predicate(2, seed=4)
W_se = se_wp(model, M).matrix
W_kraus = wp(channel, M).matrix
print("wp via the model:\n", np.round(W_se, 6))
print("difference from the Kraus form:", np.linalg.norm(W_se - W_kraus))

# duality: the expectation of wp(M) before running equals that of M after
gaps = []
for k in range(100):
    rho = random_density(2, seed=k).matrix
    gaps.append(abs(np.trace(W_se @ rho) - np.trace(M.matrix @ se_apply_matrix(model, rho))))
print("largest duality gap over 100 states:", max(gaps))
