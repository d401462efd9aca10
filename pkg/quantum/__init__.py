# Quantum package: states, flows, quasi-linearity and the two-wing experiment
