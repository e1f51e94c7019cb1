//! Reference values transcribed from the published tables.
#![allow(dead_code)]

use num_complex::Complex64;

/// `C_n^+(0)` and `C_n^-(0)`, n = 0..10.
pub const CRITICAL_PLUS: [f64; 11] = [
    1.2956609331, 5.0184325653, 11.1997215264, 19.8446859831, 30.9550078158, 44.5314400641,
    60.5743842474, 79.0840796714, 100.0606804461, 123.5042916444, 149.4149881179,
];
pub const CRITICAL_MINUS: [f64; 11] = [
    -0.7228982454, -3.8089077930, -9.3608758488, -17.3800355533, -27.8665379522, -40.8204191165,
    -56.2416910648, -74.1303587070, -94.4864243480, -117.3098891845, -142.6007538875,
];

pub const THRESHOLD_GAMMAS: [f64; 4] = [0.2, 0.4, 0.6, 0.8];

/// `Ĉ_n(γ)` positive branch, indexed `[γ][n]`.
pub const THRESHOLD_PLUS: [[f64; 6]; 4] = [
    [2.2152611940, 9.1241352235, 20.7863387221, 37.1341458455, 58.1482610684, 83.8267659355],
    [4.4806954308, 18.2554807127, 41.1954191471, 73.3066806258, 114.5915546473, 165.0504933315],
    [11.0749939486, 44.4781677038, 100.1462183676, 178.0810805327, 278.2829383518, 400.7518350936],
    [47.3560824553, 189.5457747849, 426.5282857052, 758.3037612186, 1184.8722188768, 1706.2336629858],
];

/// `Ĉ_n(γ)` negative branch, indexed `[γ][n]`.
pub const THRESHOLD_MINUS: [[f64; 6]; 4] = [
    [-12.5836736341, -107.3824443481, -296.9689222484, -581.3480285245, -960.5200426162, -1434.4850177533],
    [-3.2560380676, -25.5165055798, -70.0502840866, -136.8514039954, -225.9196386161, -337.2549550286],
    [-1.5789834905, -10.7688457640, -29.1082728662, -56.6289478043, -93.3253687332, -139.1965109280],
    [-0.9994647235, -5.8706836142, -15.2315548361, -29.2235397247, -47.8823486902, -71.2132815834],
];

/// `-ε_n` for fit orders M = 10, 20, 50, 100, indexed `[n][M]`.
pub const TRACE_LEVELS: [[f64; 4]; 8] = [
    [70.014054905396, 70.014054905332, 70.014054905332, 70.014054905331],
    [50.181498523641, 50.181498523547, 50.181498523546, 50.181498523546],
    [34.317359872296, 34.317359873422, 34.317359873422, 34.317359873422],
    [21.924290023027, 21.924290020805, 21.924290020805, 21.924290020806],
    [12.606338995716, 12.606339023394, 12.606339023389, 12.606339023389],
    [6.041070541005, 6.041070158135, 6.041070158115, 6.041070158115],
    [1.960936292059, 1.960935896912, 1.960935939333, 1.960935939299],
    [0.140393239779, 0.140375436793, 0.140389006550, 0.140389009571],
];
pub const TRACE_ORDERS: [usize; 4] = [10, 20, 50, 100];

/// Parameter-spectrum and complex-scaling columns, `-ε_n`.
pub const LEVEL_COMPARISON: [[f64; 2]; 8] = [
    [70.014054905331, 70.014054905331],
    [50.181498523546, 50.181498523549],
    [34.317359873422, 34.317359873422],
    [21.924290020806, 21.924290020806],
    [12.606339023389, 12.606339023389],
    [6.041070158115, 6.041070158115],
    [1.960935939299, 1.960935939298],
    [0.140389009571, 0.140389009245],
];

/// The unstated parameters of Tables 3 and 5, recovered by search.
pub const RECOVERED_GAMMA: f64 = 0.7;
pub const RECOVERED_STRENGTH: f64 = -200.0;

/// One reference column: `(ℓ, γ, C, energies)`.
pub struct RotationColumn {
    pub l: u32,
    pub gamma: f64,
    pub strength: f64,
    pub values: &'static [(f64, f64)],
}

impl RotationColumn {
    pub fn energies(&self) -> Vec<Complex64> {
        self.values.iter().map(|&(re, im)| Complex64::new(re, im)).collect()
    }
}

pub const ROTATION_REFERENCE: [RotationColumn; 9] = [
    RotationColumn {
        l: 0,
        gamma: 0.3,
        strength: 50.0,
        values: &[
            (-1094.42109160, 0.0),
            (-187.97359168, 0.0),
            (-36.02622806, 0.0),
            (2.49135906, -4.44858137),
            (-3.47269075, -9.76206122),
        ],
    },
    RotationColumn {
        l: 0,
        gamma: 0.5,
        strength: 80.0,
        values: &[
            (-1406.11040577, 0.0),
            (-223.29635015, 0.0),
            (-27.18320883, 0.0),
            (14.78518500, -1.61589438),
            (14.74796320, -14.45111009),
            (5.87666008, -26.32754872),
            (-7.73059099, -34.45981639),
        ],
    },
    RotationColumn {
        l: 0,
        gamma: 0.7,
        strength: 100.0,
        values: &[
            (-679.95986643, 0.0),
            (-32.96147955, 0.0),
            (44.53768627, -4.67586216),
            (43.54320167, -28.99664646),
            (30.49825604, -49.95491445),
            (12.03861742, -65.17158354),
            (-9.22487684, -75.50096443),
        ],
    },
    RotationColumn {
        l: 1,
        gamma: 0.3,
        strength: 50.0,
        values: &[
            (-185.38841241, 0.0),
            (-33.95322592, 0.0),
            (1.90006620, -0.05866355),
            (3.10281186, -5.30008439),
            (-3.13152673, -10.95482666),
        ],
    },
    RotationColumn {
        l: 1,
        gamma: 0.5,
        strength: 80.0,
        values: &[
            (-219.66959141, 0.0),
            (-24.21918006, 0.0),
            (16.59977495, -2.02268673),
            (16.14919395, -15.63387859),
            (6.89969999, -27.98583841),
            (-7.07427984, -36.52772943),
        ],
    },
    RotationColumn {
        l: 1,
        gamma: 0.7,
        strength: 100.0,
        values: &[
            (-27.29186980, 0.0),
            (48.52849166, -5.44855836),
            (46.97743366, -30.97381334),
            (33.41744568, -52.74946446),
            (14.45887019, -68.66780260),
            (-7.29348425, -79.62908216),
        ],
    },
    RotationColumn {
        l: 2,
        gamma: 0.3,
        strength: 50.0,
        values: &[
            (-29.64332195, 0.0),
            (4.38214060, -0.32914421),
            (4.67860987, -7.15177747),
            (-2.17410775, -13.60827617),
        ],
    },
    RotationColumn {
        l: 2,
        gamma: 0.5,
        strength: 80.0,
        values: &[
            (-18.01714564, 0.0),
            (20.63831671, -2.95009034),
            (19.47023201, -18.15649888),
            (9.56170137, -31.62847960),
            (-5.03946029, -41.20500393),
        ],
    },
    RotationColumn {
        l: 2,
        gamma: 0.7,
        strength: 100.0,
        values: &[
            (58.38580965, -6.72074273),
            (56.28521956, -34.19445283),
            (42.35875422, -57.41783863),
            (23.16581798, -74.61291728),
            (1.28209365, -86.72210727),
            (-22.13656236, -94.64163955),
        ],
    },
];

/// Quoted complex-rotation pole at γ = 0.4, C = 70, ℓ = 1.
pub const P_WAVE_POLE: (f64, f64) = (4.03492, -0.01465);
