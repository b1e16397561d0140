//! Regression reference for the summary table: 27 quantities for the five
//! components in column order 0, 2, 3, -1, +1, at six significant digits.

pub const SUMMARY_TABLE: [(&str, [f64; 5]); 27] = [
    (
        "y_max",
        [2.85812e-1, 3.35524e-1, 1.43921e-1, 5.22405e-1, 2.48583e-1],
    ),
    (
        "F_at_max",
        [2.84696e-1, 2.35158e-1, 5.39423e-2, 5.12872e-2, 2.37335e-1],
    ),
    (
        "Phi_at_max",
        [7.17052e-2, 6.90125e-2, 6.90380e-3, 2.26361e-2, 5.21376e-2],
    ),
    (
        "eta_max",
        [1.43410e-1, 1.57743e-1, 1.10461e-1, 2.01806e-1, 1.34433e-1],
    ),
    (
        "y1",
        [3.49398e-2, 4.87043e-2, 1.08505e-2, 1.22065e-1, 2.71081e-2],
    ),
    (
        "F_at_y1",
        [1.98326e-1, 1.67772e-1, 3.39459e-2, 3.84141e-2, 1.61750e-1],
    ),
    (
        "Phi_at_y1",
        [5.36798e-3, 6.31493e-3, 2.84108e-4, 3.52777e-3, 3.39459e-3],
    ),
    (
        "eta1",
        [1.0736e-2, 1.44341e-2, 4.54573e-3, 3.14508e-2, 8.75273e-3],
    ),
    ("y2", [1.02680, 1.08939, 6.94023e-1, 1.32370, 9.58312e-1]),
    (
        "Phi_at_y2",
        [2.55368e-1, 2.25065e-1, 3.15341e-2, 5.96117e-2, 1.97311e-1],
    ),
    (
        "eta2",
        [5.10736e-1, 5.14434e-1, 5.04546e-1, 5.31451e-1, 5.08753e-1],
    ),
    (
        "y3",
        [1.10709e-2, 1.44604e-2, 4.90942e-3, 3.59457e-2, 9.26077e-3],
    ),
    (
        "Phi_at_y3",
        [1.19916e-3, 1.29074e-3, 1.00954e-4, 6.86800e-4, 8.36754e-4],
    ),
    (
        "eta3",
        [2.39832e-3, 2.95025e-3, 1.61526e-3, 6.12297e-3, 2.15752e-3],
    ),
    ("y4", [1.47628, 1.59002, 9.06361e-1, 1.95582, 1.35291]),
    (
        "Phi_at_y4",
        [3.31467e-1, 2.96035e-1, 3.79763e-2, 7.97257e-2, 2.52321e-1],
    ),
    (
        "eta4",
        [6.62933e-1, 6.76652e-1, 6.07621e-1, 7.10772e-1, 6.50593e-1],
    ),
    (
        "a_max",
        [4.28718e-1, 5.03287e-1, 2.15881e-1, 7.83608e-1, 3.72875e-1],
    ),
    (
        "a1",
        [5.24096e-2, 7.30564e-2, 1.62757e-2, 1.83097e-1, 4.06621e-2],
    ),
    ("a2", [1.54021, 1.63408, 1.04103, 1.98555, 1.43747]),
    (
        "a3",
        [1.66063e-2, 2.16906e-2, 7.36413e-3, 5.39186e-2, 1.38912e-2],
    ),
    ("a4", [2.21442, 2.38502, 1.35954, 2.93372, 2.02936]),
    ("b", [1.4878, 1.56103, 1.02476, 1.80245, 1.39681]),
    ("d", [2.19781, 2.36333, 1.35218, 2.87981, 2.01547]),
    (
        "r1",
        [2.52929e-1, 2.75607e-1, 1.94782e-1, 3.33163e-1, 2.37837e-1],
    ),
    (
        "r2",
        [1.32674e-1, 1.43309e-1, 1.05915e-1, 1.70355e-1, 1.25680e-1],
    ),
    (
        "r3",
        [6.60535e-1, 6.73701e-1, 6.06006e-1, 7.04649e-1, 6.48435e-1],
    ),
];
