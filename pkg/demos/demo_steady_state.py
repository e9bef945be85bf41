#!/usr/bin/env python3
"""Solve for the stationary state of the driven cavity-emitter system and
look at what sits inside it.

The system: a single cavity mode strongly coupled to a two-level emitter
(coupling Omega_R exceeds every relaxation rate), coherently driven slightly
above the upper-polariton line.  Everything is expressed in units of the
cavity frequency.
"""

import numpy as np

from drivenjc import SystemParams, assemble_liouvillian, steady_state
from drivenjc.observables import emission_flux, excitation_number, transition_graph
from drivenjc.operators import build_operators, build_space

params = SystemParams(nu=2.8e-3)   # drive amplitude at the first resonance
print(f"drive nu = {params.nu}, detuning delta = {params.delta:+.4g}")

L, channels, eig = assemble_liouvillian(params)
print(f"Liouvillian: {L.matrix.shape[0]}x{L.matrix.shape[1]}, "
      f"{len(channels.channels)} jump channels")

st = steady_state(L)
print(f"solved by {st.method}: residual {st.residual:.2e}, "
      f"smallest eigenvalue {st.min_eigenvalue:.2e}")

ops = build_operators(build_space(params.n_max))
n_st = excitation_number(st.rho, ops)
photon, energy = emission_flux(st.rho, channels)
print(f"n_st = {n_st:.4f}")
print(f"photon outflow = {photon:.3e} per unit time, energy flux = {energy:.3e}")

# where the population lives, in the dressed basis
graph = transition_graph(st.rho, channels, eig)
top = np.argsort(graph.populations)[::-1][:6]
print("most populated dressed levels (index: population, energy):")
for i in top:
    print(f"  {i:3d}: {graph.populations[i]:.4f}   E = {eig.energies[i]:+.5f}")
