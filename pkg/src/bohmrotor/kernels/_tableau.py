"""Dormand-Prince 5(4) embedded pair coefficients.

Shared by both kernel backends so they implement the identical step. The
E row is the difference between the 5th- and embedded 4th-order weights,
giving the local error estimate directly. FSAL: the 7th stage of an
accepted step is the first stage of the next.
"""

C2 = 1.0 / 5.0
C3 = 3.0 / 10.0
C4 = 4.0 / 5.0
C5 = 8.0 / 9.0

A21 = 1.0 / 5.0
A31 = 3.0 / 40.0
A32 = 9.0 / 40.0
A41 = 44.0 / 45.0
A42 = -56.0 / 15.0
A43 = 32.0 / 9.0
A51 = 19372.0 / 6561.0
A52 = -25360.0 / 2187.0
A53 = 64448.0 / 6561.0
A54 = -212.0 / 729.0
A61 = 9017.0 / 3168.0
A62 = -355.0 / 33.0
A63 = 46732.0 / 5247.0
A64 = 49.0 / 176.0
A65 = -5103.0 / 18656.0

B1 = 35.0 / 384.0
B3 = 500.0 / 1113.0
B4 = 125.0 / 192.0
B5 = -2187.0 / 6784.0
B6 = 11.0 / 84.0

E1 = 71.0 / 57600.0
E3 = -71.0 / 16695.0
E4 = 71.0 / 1920.0
E5 = -17253.0 / 339200.0
E6 = 22.0 / 525.0
E7 = -1.0 / 40.0

# Step-size controller limits: h_new = h * clip(0.9 * ratio^(-1/5), FAC_MIN, FAC_MAX)
FAC_MIN = 0.2
FAC_MAX = 5.0
SAFETY = 0.9

# Segment integrator status codes
OK = 0
NODE = 1
UNDERFLOW = 2
