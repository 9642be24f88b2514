//! Published LP objectives, keyed by LP size.

/// Tightened Ranking LP.
const TIGHTENED: &[(usize, f64)] = &[
    (1, 0.39999),
    (2, 0.48263),
    (3, 0.51391),
    (4, 0.52480),
    (5, 0.53247),
    (6, 0.53783),
    (7, 0.54140),
    (8, 0.54429),
    (9, 0.54639),
    (10, 0.54804),
    (11, 0.54947),
    (12, 0.55060),
    (13, 0.55152),
    (14, 0.55229),
    (15, 0.55297),
    (16, 0.55356),
    (17, 0.55406),
    (18, 0.55450),
    (19, 0.55490),
    (20, 0.55526),
    (25, 0.55657),
    (30, 0.55741),
    (35, 0.55801),
    (40, 0.55846),
    (50, 0.55909),
    (60, 0.55950),
    (70, 0.55979),
    (80, 0.56001),
];

/// FRanking LP.
const FRANKING: &[(usize, f64)] = &[
    (1, 0.5),
    (2, 0.5),
    (3, 0.50555),
    (4, 0.51153),
    (5, 0.51793),
    (6, 0.52125),
    (7, 0.52338),
    (8, 0.52600),
    (9, 0.52767),
    (10, 0.52880),
    (12, 0.53102),
    (14, 0.53248),
    (16, 0.53372),
    (18, 0.53448),
    (20, 0.53524),
    (25, 0.53654),
    (30, 0.53745),
    (35, 0.53813),
    (40, 0.53861),
    (45, 0.53900),
];

/// Odd-girth Ranking LP at n = 80, keyed by k (odd girth at least 2k+1).
const ODD_GIRTH_N80: &[(u32, f64)] = &[
    (2, 0.56288),
    (3, 0.57023),
    (4, 0.57911),
    (5, 0.58587),
    (6, 0.59071),
    (8, 0.59697),
    (16, 0.60693),
    (32, 0.61231),
    (64, 0.61514),
];

/// LP families accepted by `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Simple,
    Tightened,
    OddGirth(u32),
    Franking,
}

/// Published objective for the family at size `n`, if any.
pub fn published(family: Family, n: usize) -> Option<f64> {
    let lookup = |table: &[(usize, f64)]| table.iter().find(|(m, _)| *m == n).map(|(_, v)| *v);
    match family {
        Family::Simple => None,
        Family::Tightened => lookup(TIGHTENED),
        Family::Franking => lookup(FRANKING),
        Family::OddGirth(k) if n == 80 => ODD_GIRTH_N80.iter().find(|(j, _)| *j == k).map(|(_, v)| *v),
        Family::OddGirth(_) => None,
    }
}
