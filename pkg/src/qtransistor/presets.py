"""Named run configurations, one per figure-level result.

Each preset is a complete config in the flat key = value format accepted
by the CLI; pass its name wherever a config file is expected.  Base
parameter values follow the corresponding figure; sweep endpoints and
point counts are reconstructions chosen by eye and marked as such.
"""

PRESETS: dict[str, str] = {}

PRESETS["fig2"] = """\
# transistor demonstration: currents and amplification vs control temperature
omega_L = 30
omega_M = 1
g = 0.1
lambda1 = 0.7
lambda2 = 0.7
lambda3 = 0.7
T_L = 5
T_M = 1
T_R = 0.5
gamma = 0.002
axis = T_M
lo = 0.02        # range chosen by eye
hi = 3
points = 100
control = M
"""

PRESETS["fig3a"] = """\
# strongest single-channel common coupling, stronger internal coupling
omega_L = 30
omega_M = 1
g = 0.7
lambda1 = 0.9
lambda2 = 0
lambda3 = 0
T_L = 5
T_M = 1
T_R = 0.5
gamma = 0.002
axis = T_M
lo = 0.02        # range chosen by eye
hi = 3
points = 50
control = M
"""

PRESETS["fig3b"] = """\
# as fig3a with weaker internal coupling
omega_L = 30
omega_M = 1
g = 0.3
lambda1 = 0.9
lambda2 = 0
lambda3 = 0
T_L = 5
T_M = 1
T_R = 0.5
gamma = 0.002
axis = T_M
lo = 0.02        # range chosen by eye
hi = 3
points = 50
control = M
"""

PRESETS["fig3c"] = """\
# completely common environments; dark state pinned to zero occupation
omega_L = 30
omega_M = 1
g = 0.3
lambda1 = 1
lambda2 = 1
lambda3 = 1
rho44_init = 0
T_L = 5
T_M = 1
T_R = 0.5
gamma = 0.002
axis = T_M
lo = 0.02        # range chosen by eye
hi = 3
points = 50
control = M
"""

PRESETS["fig3d"] = """\
# weak first channel, strong second and third channels
omega_L = 30
omega_M = 1
g = 0.3
lambda1 = 0.2
lambda2 = 0.8
lambda3 = 0.8
T_L = 5
T_M = 1
T_R = 0.5
gamma = 0.002
axis = T_M
lo = 0.02        # range chosen by eye
hi = 3
points = 50
control = M
"""

PRESETS["fig4a"] = """\
# amplification vs lambda1 at fixed lambda2 = lambda3 = 0.3
omega_L = 30
omega_M = 1
g = 0.3
lambda1 = 0.3
lambda2 = 0.3
lambda3 = 0.3
T_L = 5
T_M = 3
T_R = 0.5
gamma = 0.002
axis = lambda1
lo = 0
hi = 1
points = 21
control = M
"""

PRESETS["fig4b"] = """\
# amplification vs lambda2 at fixed lambda1 = lambda3 = 0.3
omega_L = 30
omega_M = 1
g = 0.3
lambda1 = 0.3
lambda2 = 0.3
lambda3 = 0.3
T_L = 5
T_M = 3
T_R = 0.5
gamma = 0.002
axis = lambda2
lo = 0
hi = 1
points = 21
control = M
"""

PRESETS["fig4c"] = """\
# amplification vs lambda3 at fixed lambda1 = lambda2 = 0.3
omega_L = 30
omega_M = 1
g = 0.3
lambda1 = 0.3
lambda2 = 0.3
lambda3 = 0.3
T_L = 5
T_M = 3
T_R = 0.5
gamma = 0.002
axis = lambda3
lo = 0
hi = 1
points = 21
control = M
"""

PRESETS["fig5a"] = """\
# left terminal as control
omega_L = 30
omega_M = 1
g = 0.7
lambda1 = 0.9
lambda2 = 0.1
lambda3 = 0.1
T_L = 5
T_M = 5
T_R = 1
gamma = 0.002
axis = T_L
lo = 2           # range chosen by eye
hi = 10
points = 33
control = L
"""

PRESETS["fig5b"] = """\
# right terminal as control; the range stays above the dQ_M/dT_R = 0
# crossing near T_R = 1.3 and above the regime where the currents fall
# below double-precision resolution
omega_L = 30
omega_M = 1
g = 0.7
lambda1 = 0.9
lambda2 = 0.1
lambda3 = 0.1
T_L = 1.6
T_M = 7
T_R = 4
gamma = 0.002
axis = T_R
lo = 3           # range chosen by eye
hi = 6
points = 31
control = R
"""

PRESETS["fig6"] = """\
# steady populations vs control temperature; compare lambda1 = 0.9 and 0
omega_L = 30
omega_M = 1
g = 0.7
lambda1 = 0.9
lambda2 = 0
lambda3 = 0
T_L = 5
T_M = 1
T_R = 0.5
gamma = 0.002
axis = T_M
lo = 0.02        # range chosen by eye
hi = 3
points = 60
compare_lambda1 = 0
"""

PRESETS["fig7a"] = """\
# currents vs conserved dark-state population
omega_L = 30
omega_M = 1
g = 0.3
lambda1 = 1
lambda2 = 1
lambda3 = 1
T_L = 5
T_M = 1
T_R = 0.5
gamma = 0.002
axis = rho44_init
lo = 0
hi = 0.98
points = 50
outputs = currents, populations
"""

PRESETS["fig7b"] = """\
# amplification vs conserved dark-state population (flat by construction)
omega_L = 30
omega_M = 1
g = 0.3
lambda1 = 1
lambda2 = 1
lambda3 = 1
T_L = 5
T_M = 1
T_R = 0.5
gamma = 0.002
axis = rho44_init
lo = 0
hi = 0.98
points = 25
control = M
outputs = alpha
"""

PRESETS["fig8"] = """\
# dark-state heat modulation by a resonant pulse of 0.7 half-periods
omega_L = 30
omega_M = 1
g = 0.7
lambda1 = 1
lambda2 = 1
lambda3 = 1
rho44_init = 0.99
T_L = 5
T_M = 3
T_R = 0.5
gamma = 0.004
drive_Omega = 0.3
drive_duration = 7.330382858376184   # 0.7 * pi / 0.3
"""

PRESETS["fig9a"] = """\
# decay-rate bias without common coupling
omega_L = 30
omega_M = 1
g = 0.7
lambda1 = 0
lambda2 = 0
lambda3 = 0
T_L = 5
T_M = 1
T_R = 0.5
gamma = 0.002
axis = gamma_bias
lo = 1
hi = 6
points = 6
control = M
"""

PRESETS["fig9b"] = """\
# decay-rate bias combined with common coupling
omega_L = 30
omega_M = 1
g = 0.7
lambda1 = 0.7
lambda2 = 0.2
lambda3 = 0.2
T_L = 5
T_M = 1
T_R = 0.5
gamma = 0.002
axis = gamma_bias
lo = 1
hi = 6
points = 6
control = M
"""
