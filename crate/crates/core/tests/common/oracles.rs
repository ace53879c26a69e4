// Generated by tests/data/gen_oracles.py (mpmath, 40 digits). Do not edit.

/// (z, principal log-gamma(z))
pub const LOG_GAMMA: &[((f64, f64), (f64, f64))] = &[
    ((0.25, 0.0), (1.2880225246980774574, 0.0)),
    ((0.2999999999999999889, 0.4000000000000000222), (0.49665590338172579665, -0.98274344760714666031)),
    ((2.5, -3.0), (-1.4709546103488416913, -2.82261563826079945)),
    ((0.10000000000000000555, 50.0), (-79.185684608589472944, 144.97206505719842487)),
    ((0.69999999999999995559, -100.0), (-155.2396608090987817, -360.83139453173202995)),
    ((15.5, 2.0), (26.40402188351542704, 5.4223586180031431367)),
    ((-2.5, 0.5), (-0.93508562129827747868, -8.8709628852474591986)),
    ((0.5, 20.0), (-30.496988002693259643, 39.91672910847332607)),
    ((0.010000000000000000208, 0.010000000000000000208), (4.2528252296900826952, -0.79100662792943830352)),
    ((0.9000000000000000222, -7.5), (-10.056179619154449041, -8.2349750622109437597)),
    ((40.0, 30.0), (96.140147324970933798, 112.7779839809793069)),
    ((0.25, 99.0), (-155.73867698489849208, 355.52427130063745842)),
];

pub const KAPPA_SINE_QUARTER: f64 = 0.9033149603099504517;
pub const KAPPA_SINE_THREE_QUARTERS: f64 = 1.1070335862221018015;
pub const KAPPA_COSINE_03_02: (f64, f64) = (0.38907299092932317584, 0.38033589881812531516);
pub const GAMMA_QUARTER: f64 = 3.6256099082219083119;

pub const GAMMA_THREE_QUARTERS: f64 = 1.2254167024651776451;

/// (is_cosine, zeta, closed form of the power-oscillatory integral)
pub const POWER_INTEGRAL: &[(bool, (f64, f64), (f64, f64))] = &[
    (true, (0.5, 0.0), (1.2533141373155002512, 0.0)),
    (false, (0.2999999999999999889, 0.0), (1.3581438997256193784, 0.0)),
    (true, (0.5, 1.0), (-0.15802539172481019487, -1.2433118282897162677)),
    (true, (0.5, 5.0), (-0.80678220840324838615, 0.95911354645780814786)),
    (false, (0.2000000000000000111, -3.0), (0.42517691095278570126, -0.79569710940846385167)),
    (true, (0.80000000000000004441, 2.0), (0.26167838768927188159, -1.5150358484027091317)),
];

/// (tau, Gamma(1/2 + i tau)) -- Mellin image of exp(-t)
pub const MELLIN_EXP: &[(f64, (f64, f64))] = &[
    (0.0, (1.7724538509055160273, 0.0)),
    (0.5, (0.81816399954174739408, -0.76331382871398261667)),
    (1.0, (0.30069461726065581622, -0.42496787943312381261)),
    (2.0, (0.089855176706431635814, -0.06049376029288756848)),
    (5.0, (-0.00096948070526994947832, 0.000083630391299613724661)),
    (10.0, (3.378724376234235797e-7, 1.6893698390389189112e-7)),
    (20.0, (-3.4307841591454817532e-14, 4.5428803574633433635e-14)),
];

/// (tau, 2^{zeta/2-1} Gamma(zeta/2)) at zeta = 1/2 + i tau -- Mellin image of exp(-t^2/2)
pub const MELLIN_GAUSS: &[(f64, (f64, f64))] = &[
    (0.0, (2.1558005495409279449, 0.0)),
    (0.5, (1.1554889249093387218, -0.90716340182009777833)),
    (1.0, (0.55235174300130377541, -0.62699946312294128488)),
    (2.0, (0.24162820596593036511, -0.19862708604477686812)),
    (5.0, (0.0098696355748390995569, 0.021199158594301245067)),
    (10.0, (0.0003820553912662502471, -0.000061998699779951665894)),
    (20.0, (9.5290888061819563633e-8, 8.2922902902615438651e-8)),
];

/// (tau, c(tau), s(tau))
pub const PHASES: &[(f64, (f64, f64), (f64, f64))] = &[
    (0.0, (1.0, 0.0), (1.0, 0.0)),
    (1.0, (0.66102722323968967693, -0.75036191943356605008), (0.99434503819214280384, -0.10619766957267032607)),
    (-2.0, (0.7724960495231775188, 0.63501956936072802128), (0.99544363815153522584, -0.095351786892723740813)),
    (2.0, (0.7724960495231775188, -0.63501956936072802128), (0.99544363815153522584, 0.095351786892723740813)),
    (7.5, (-0.96259465423499443615, -0.27094562487372167942), (-0.4890697189134783178, -0.87224469619590769318)),
    (-30.0, (-0.4814947561621740022, 0.87644897158267497207), (0.27927480398204873336, 0.96021121835812158821)),
];

/// Coefficients (ascending powers of t) of h_k(t) e^{t^2/2}, from symbolic differentiation.
pub const HERMITE_POLY: &[&[f64]] = &[
    &[1.0],
    &[0.0, -2.0],
    &[-2.0, 0.0, 4.0],
    &[0.0, 12.0, 0.0, -8.0],
    &[12.0, 0.0, -48.0, 0.0, 16.0],
    &[0.0, -120.0, 0.0, 160.0, 0.0, -32.0],
    &[-120.0, 0.0, 720.0, 0.0, -480.0, 0.0, 64.0],
];

pub const HALF_GAUSS_NORM: f64 = 0.94139626377671481263;
pub const PHI_GAUSS_L2: f64 = 0.79161674354307976929;
pub const PHI_GAUSS_L1: f64 = 0.88622692545275801365;
