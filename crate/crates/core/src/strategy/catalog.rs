use super::{Move, Space, StrategyPoint};
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

const NAMES: [&str; 13] = ["C", "D", "Q", "I", "iSx", "iSy", "iSz", "K1", "K2", "K3", "K4", "K5", "K6"];

pub fn catalog_names() -> &'static [&'static str] {
    &NAMES
}

/// Names used when labelling points of `space`, in priority order.
pub fn catalog_names_in(space: Space) -> &'static [&'static str] {
    match space {
        Space::Classical => &["C", "D"],
        Space::TwoParamDiag => &["C", "D", "Q"],
        Space::TwoParamOffdiag => &["C", "iSy", "iSx"],
        Space::Su2 => &["I", "iSx", "iSy", "iSz", "K1", "K2", "K3", "K4", "K5", "K6"],
    }
}

/// Canonical point for a catalog name.
pub fn catalog_lookup<T: Real>(name: &str) -> Result<StrategyPoint<T>> {
    let z = T::zero();
    let one = T::one();
    let r = T::FRAC_1_SQRT_2();
    // a = 1/(2√2), b = √3/(2√2)
    let a = r / (one + one);
    let b = a * lit::<T>(3.0).sqrt();
    let p = match name {
        "C" => StrategyPoint::TwoParamDiag { theta: z, phi: z },
        "D" => StrategyPoint::TwoParamDiag { theta: T::PI(), phi: z },
        "Q" => StrategyPoint::TwoParamDiag { theta: z, phi: T::FRAC_PI_2() },
        "I" => StrategyPoint::Su2([one, z, z, z]),
        "iSx" => StrategyPoint::Su2([z, one, z, z]),
        "iSy" => StrategyPoint::Su2([z, z, one, z]),
        "iSz" => StrategyPoint::Su2([z, z, z, one]),
        "K1" => StrategyPoint::Su2([r, z, r, z]),
        "K2" => StrategyPoint::Su2([r, z, -r, z]),
        "K3" => StrategyPoint::Su2([-a, b, a, b]),
        "K4" => StrategyPoint::Su2([a, -b, a, b]),
        "K5" => StrategyPoint::Su2([a, b, -a, b]),
        "K6" => StrategyPoint::Su2([a, b, a, -b]),
        _ => return Err(Error::UnknownStrategy(name.to_string())),
    };
    Ok(p)
}

/// Catalog entry expressed in `space`; fails when the operator is not a
/// member of that space.
pub fn named_in_space<T: Real>(name: &str, space: Space) -> Result<StrategyPoint<T>> {
    if space == Space::Classical {
        match name {
            "C" | "I" => return Ok(StrategyPoint::Classical(Move::Cooperate)),
            "D" => return Ok(StrategyPoint::Classical(Move::Defect)),
            _ => {}
        }
    }
    catalog_lookup::<T>(name)?
        .in_space(space)
        .ok_or_else(|| Error::Domain(format!("strategy `{name}` is not in the {space} space")))
}

/// Parses a strategy token: a catalog name (resolved in `space`) or one of
/// the explicit spellings produced by labels, `diag(θ;φ)`, `offdiag(θ;φ)`
/// and `su2(w;x;y;z)`, which carry their own space.
pub fn parse_strategy<T: Real>(token: &str, space: Space) -> Result<StrategyPoint<T>> {
    let token = token.trim();
    let Some((head, rest)) = token.split_once('(') else {
        return named_in_space(token, space);
    };
    let body = rest
        .strip_suffix(')')
        .ok_or_else(|| Error::UnknownStrategy(token.to_string()))?;
    let numbers = body
        .split(';')
        .map(|x| x.trim().parse::<f64>().map(lit::<T>))
        .collect::<std::result::Result<Vec<T>, _>>()
        .map_err(|_| Error::UnknownStrategy(token.to_string()))?;
    match (head, numbers.as_slice()) {
        ("diag", [t, p]) => StrategyPoint::two_param_diag(*t, *p),
        ("offdiag", [t, p]) => StrategyPoint::two_param_offdiag(*t, *p),
        ("su2", [w, x, y, z]) => StrategyPoint::su2([*w, *x, *y, *z]),
        _ => Err(Error::UnknownStrategy(token.to_string())),
    }
}

pub(super) fn matching_name<T: Real>(point: &StrategyPoint<T>) -> Option<&'static str> {
    let space = point.space();
    let u = point.to_unitary();
    let tol = lit::<T>(1e-9);
    catalog_names_in(space).iter().copied().find(|name| {
        catalog_lookup::<T>(name)
            .map(|c| c.to_unitary().max_abs_diff_up_to_sign(&u) <= tol)
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unitary_from_su2;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn lookups() {
        assert_eq!(catalog_lookup::<f64>("D").unwrap(), StrategyPoint::TwoParamDiag { theta: PI, phi: 0.0 });
        assert_eq!(catalog_lookup::<f64>("Q").unwrap(), StrategyPoint::TwoParamDiag { theta: 0.0, phi: FRAC_PI_2 });
        let StrategyPoint::Su2(k3) = catalog_lookup::<f64>("K3").unwrap() else { panic!() };
        let s = 2.0 * 2f64.sqrt();
        let expect = [-1.0 / s, 3f64.sqrt() / s, 1.0 / s, 3f64.sqrt() / s];
        for i in 0..4 {
            assert!((k3[i] - expect[i]).abs() < 1e-15);
        }
        assert!(matches!(catalog_lookup::<f64>("K7"), Err(Error::UnknownStrategy(_))));
    }

    #[test]
    fn every_entry_is_unitary_and_k_vectors_are_unit() {
        for name in catalog_names() {
            let p = catalog_lookup::<f64>(name).unwrap();
            assert!(p.to_unitary().unitarity_defect() < 1e-15, "{name}");
            if let StrategyPoint::Su2(v) = p {
                assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-15);
                assert!(unitary_from_su2(v).is_ok());
            }
        }
    }

    #[test]
    fn tokens_parse() {
        let d = parse_strategy::<f64>("D", Space::TwoParamDiag).unwrap();
        assert_eq!(d.label(), "D");
        let p = parse_strategy::<f64>("diag(1.0;0.5)", Space::Su2).unwrap();
        assert_eq!(p, StrategyPoint::TwoParamDiag { theta: 1.0, phi: 0.5 });
        let v = parse_strategy::<f64>("su2(0.6;0;-0.8;0)", Space::Su2).unwrap();
        assert_eq!(v.label(), "su2(0.600000;0.000000;-0.800000;0.000000)");
        for bad in ["su2(1;0;0)", "diag(4;0)", "foo(1;2)", "K9", "su2(0;0;0;0)", "su2(1;0;0;0"] {
            assert!(parse_strategy::<f64>(bad, Space::Su2).is_err(), "{bad}");
        }
    }

    #[test]
    fn names_resolve_in_their_spaces() {
        assert_eq!(named_in_space::<f64>("D", Space::Classical).unwrap(), StrategyPoint::Classical(Move::Defect));
        let isy = named_in_space::<f64>("iSy", Space::TwoParamOffdiag).unwrap();
        assert_eq!(isy.angles(), Some((PI, 0.0)));
        let q = named_in_space::<f64>("Q", Space::Su2).unwrap();
        assert_eq!(q.label(), "iSz");
        assert!(named_in_space::<f64>("K1", Space::TwoParamOffdiag).is_ok());
        assert!(named_in_space::<f64>("Q", Space::TwoParamOffdiag).is_err());
        for space in Space::ALL {
            for name in catalog_names_in(space) {
                assert_eq!(named_in_space::<f64>(name, space).unwrap().label(), *name, "{name} in {space}");
            }
        }
    }
}
