//! The semigroup-theoretic layer: unit group, axis invariants, normal
//! forms, the idempotent semilattice, absorption predicates, and the
//! Green's-relations decision procedures (dimension 3 only where the
//! underlying results are dimension-specific).

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::pmap::PiecewiseMap;
use crate::point::Point;
use crate::region::{BoxRegion, Interval, RegionSet};
use crate::rule::Rule;

/// All units of the monoid: exactly the coordinate-permutation maps, in
/// lexicographic order of their permutations.
pub fn units(dim: usize) -> Vec<PiecewiseMap> {
    Perm::all(dim).into_iter().map(PiecewiseMap::unit).collect()
}

/// The unique permutation `s` with `(axis_i of dom a) a` inside
/// `axis_{s(i)}`: probed beyond every finite irregularity and confirmed
/// symbolically on the covering piece's rule.
pub fn axis_permutation(a: &PiecewiseMap) -> Result<Perm> {
    let n = a.dim();
    let b = a.bound_b();
    let mut targets = vec![0usize; n];
    for i in 0..n {
        let mut coords = vec![1i64; n];
        coords[i] = b + 1;
        let probe = Point::new(coords)?;
        let image = a.evaluate(&probe)?.ok_or_else(|| {
            Error::InvalidElement(format!("axis probe {probe} is outside the domain"))
        })?;
        let j = image.axis_of().ok_or_else(|| {
            Error::InvalidElement(format!("axis probe {probe} maps off every axis, to {image}"))
        })?;
        // symbolic confirmation on the piece carrying the axis tail
        let piece = a
            .pieces()
            .iter()
            .find(|p| p.region.contains(&probe))
            .ok_or_else(|| {
                Error::InvalidElement(format!("axis probe {probe} not on any piece"))
            })?;
        if piece.region.interval(i).hi().is_some() {
            return Err(Error::InvalidElement(format!(
                "piece at axis probe {probe} is bounded along axis {}",
                i + 1
            )));
        }
        let rule = &piece.rule;
        if rule.perm().target(i) != j {
            return Err(Error::InvalidElement(format!(
                "probe image lies on axis {} but the tail rule routes axis {} to {}",
                j + 1,
                i + 1,
                rule.perm().target(i) + 1
            )));
        }
        for k in 0..n {
            if k != j && rule.shift()[k] != 0 {
                return Err(Error::InvalidElement(format!(
                    "tail of axis {} leaves axis {} (nonzero shift at {})",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
        }
        targets[i] = j;
    }
    Perm::new(targets)
        .map_err(|_| Error::InvalidElement("axis images are not a permutation".into()))
}

/// Normal form: `sigma = unit(s^-1)` for the axis permutation `s` of `a`,
/// and `a' = a . sigma` preserving every axis. Both `a . sigma` and
/// `sigma . a` are checked to be axis-preserving.
pub fn normalize(a: &PiecewiseMap) -> Result<(Perm, PiecewiseMap)> {
    let s = axis_permutation(a)?;
    let sigma_perm = s.inverse();
    let sigma = PiecewiseMap::unit(sigma_perm.clone());
    let normalized = a.compose(&sigma)?;
    if !axis_permutation(&normalized)?.is_identity() {
        return Err(Error::TheoremViolation(
            "right-normalized map is not axis-preserving".into(),
        ));
    }
    if !axis_permutation(&sigma.compose(a)?)?.is_identity() {
        return Err(Error::TheoremViolation(
            "left-normalized map is not axis-preserving".into(),
        ));
    }
    Ok((sigma_perm, normalized))
}

fn require_normalized(a: &PiecewiseMap) -> Result<()> {
    if axis_permutation(a)?.is_identity() {
        Ok(())
    } else {
        Err(Error::NotNormalized)
    }
}

fn require_dim3(a: &PiecewiseMap) -> Result<()> {
    if a.dim() == 3 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(a.dim()))
    }
}

/// The cylinder over the coordinate plane spanned by axes `i1, i2`: all
/// other coordinates pinned to 1.
fn plane_box(dim: usize, i1: usize, i2: usize) -> BoxRegion {
    let ivs = (0..dim)
        .map(|j| {
            if j == i1 || j == i2 {
                Interval::full()
            } else {
                Interval::point(1).expect("1 >= 1")
            }
        })
        .collect();
    BoxRegion::new(ivs).expect("valid intervals")
}

fn on_plane(p: &Point, i1: usize, i2: usize) -> bool {
    p.coords()
        .iter()
        .enumerate()
        .all(|(j, &c)| j == i1 || j == i2 || c == 1)
}

/// True iff every coordinate plane through the bottom maps into itself;
/// a theorem for valid axis-preserving maps, decided symbolically here.
pub fn plane_preservation_check(a: &PiecewiseMap) -> Result<bool> {
    require_normalized(a)?;
    let n = a.dim();
    for i1 in 0..n {
        for i2 in i1 + 1..n {
            let plane = plane_box(n, i1, i2);
            for p in a.pieces() {
                let x = match p.region.intersect(&plane) {
                    Some(x) => x,
                    None => continue,
                };
                for k in 0..n {
                    if k == i1 || k == i2 {
                        continue;
                    }
                    let s = p.rule.perm().source(k);
                    let iv = x.interval(s);
                    let pinned_to = match iv.hi() {
                        Some(h) if h == iv.lo() => Some(iv.lo()),
                        _ => None,
                    };
                    if pinned_to.map(|v| v + p.rule.shift()[k]) != Some(1) {
                        return Ok(false);
                    }
                }
            }
            for (k, v) in a.patch() {
                if on_plane(k, i1, i2) && !on_plane(v, i1, i2) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// True iff `a(x) <= x` on the whole domain; decided symbolically per
/// piece and patch entry, and cross-checked on the finite window.
pub fn pointwise_decrease_check(a: &PiecewiseMap) -> Result<bool> {
    require_dim3(a)?;
    require_normalized(a)?;
    let n = a.dim();
    let mut symbolic = true;
    'outer: for p in a.pieces() {
        for k in 0..n {
            let s = p.rule.perm().source(k);
            let d = p.rule.shift()[k];
            if s == k {
                if d > 0 {
                    symbolic = false;
                    break 'outer;
                }
            } else {
                // need x_s + d <= x_k on the whole box
                let sup = p.region.interval(s).hi();
                let lo_k = p.region.interval(k).lo();
                match sup {
                    None => {
                        symbolic = false;
                        break 'outer;
                    }
                    Some(h) => {
                        if h + d > lo_k {
                            symbolic = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    if symbolic {
        for (k, v) in a.patch() {
            if !v.leq(k)? {
                symbolic = false;
                break;
            }
        }
    }
    // independent finite cross-check
    let b = a.bound_b();
    let mut window = true;
    'scan: for x in window_points(n, b) {
        if let Some(y) = a.evaluate(&x)? {
            if !y.leq(&x)? {
                window = false;
                break 'scan;
            }
        }
    }
    if symbolic != window {
        return Err(Error::TheoremViolation(format!(
            "pointwise-decrease verdicts disagree: symbolic {symbolic}, window {window}"
        )));
    }
    Ok(symbolic)
}

fn window_points(n: usize, b: i64) -> Vec<Point> {
    let mut out = Vec::new();
    let mut coords = vec![1i64; n];
    loop {
        out.push(Point::new(coords.clone()).expect(">=1"));
        let mut i = n;
        while i > 0 {
            i -= 1;
            if coords[i] < b {
                coords[i] += 1;
                for c in coords.iter_mut().skip(i + 1) {
                    *c = 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
    }
}

/// True iff some domain point in the up-set of `(m,...,m)` moves.
fn moves_in_upset(a: &PiecewiseMap, m: i64) -> Result<bool> {
    let n = a.dim();
    let corner = Point::new(vec![m; n])?;
    let upset = RegionSet::upset_of_points(n, &[corner.clone()])?;
    let specials = RegionSet::from_points(n, a.special_points().iter())?;
    let id = Rule::identity(n);
    for p in a.pieces() {
        if p.rule == id {
            continue;
        }
        let base = RegionSet::from_boxes(n, vec![p.region.clone()])?;
        let generic = base.intersect(&upset)?.subtract(&specials)?;
        for bx in generic.boxes() {
            if !crate::pmap::rules_agree_on(&p.rule, &id, bx) {
                return Ok(true);
            }
        }
    }
    for (k, v) in a.patch() {
        if corner.leq(k)? && k != v {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The least threshold `m` such that `a` is the identity on its domain
/// above the corner `(m,...,m)`.
pub fn n_alpha(a: &PiecewiseMap) -> Result<i64> {
    require_dim3(a)?;
    require_normalized(a)?;
    let limit = a.bound_b() + 2;
    for m in 1..=limit {
        if !moves_in_upset(a, m)? {
            return Ok(m);
        }
    }
    Err(Error::TheoremViolation(format!(
        "no identity threshold found up to {limit}; the map should act \
         identically far from the origin"
    )))
}

/// Identity map restricted to the cofinite region `set`.
pub fn restriction_idempotent(set: &RegionSet) -> Result<PiecewiseMap> {
    let comp = set.complement();
    if !comp.is_finite() {
        return Err(Error::Precondition(
            "restriction region is not cofinite".into(),
        ));
    }
    PiecewiseMap::identity_off(set.dim(), comp.enumerate()?)
}

pub fn is_idempotent(a: &PiecewiseMap) -> Result<bool> {
    let dc = a.dom_complement();
    if !dc.is_finite() {
        return Ok(false);
    }
    let eps = PiecewiseMap::identity_off(a.dim(), dc.enumerate()?)?;
    a.equals(&eps)
}

/// Product of two idempotents, verified to be the idempotent whose
/// complement is the union of the two complements.
pub fn idempotent_product(a: &PiecewiseMap, b: &PiecewiseMap) -> Result<PiecewiseMap> {
    if !is_idempotent(a)? || !is_idempotent(b)? {
        return Err(Error::Precondition(
            "idempotent_product requires idempotent arguments".into(),
        ));
    }
    let prod = a.compose(b)?;
    let union = a.dom_complement().union(&b.dom_complement())?;
    let expected = PiecewiseMap::identity_off(a.dim(), union.enumerate()?)?;
    if !prod.equals(&expected)? {
        return Err(Error::TheoremViolation(
            "idempotent product is not the identity off the union of complements".into(),
        ));
    }
    Ok(prod)
}

/// The semilattice isomorphism: an idempotent corresponds to the finite
/// complement of its domain.
pub fn semilattice_iso(a: &PiecewiseMap) -> Result<Vec<Point>> {
    if !is_idempotent(a)? {
        return Err(Error::Precondition(
            "semilattice_iso requires an idempotent".into(),
        ));
    }
    a.dom_complement().enumerate()
}

/// `g . a = a`, decided both by direct composition and by the restriction
/// criterion (`g` is the identity on `dom a`); the two must agree.
pub fn left_absorbs(g: &PiecewiseMap, a: &PiecewiseMap) -> Result<bool> {
    let direct = g.compose(a)?.equals(a)?;
    let iota = restriction_idempotent(&a.dom_region())?;
    let restricted = iota.compose(g)?.equals(&iota)?;
    if direct != restricted {
        return Err(Error::TheoremViolation(format!(
            "left absorption verdicts disagree: composition {direct}, restriction {restricted}"
        )));
    }
    Ok(direct)
}

/// `a . g = a`, dually via the range of `a`.
pub fn right_absorbs(g: &PiecewiseMap, a: &PiecewiseMap) -> Result<bool> {
    let direct = a.compose(g)?.equals(a)?;
    let iota = restriction_idempotent(&a.ran_region())?;
    let restricted = iota.compose(g)?.equals(&iota)?;
    if direct != restricted {
        return Err(Error::TheoremViolation(format!(
            "right absorption verdicts disagree: composition {direct}, restriction {restricted}"
        )));
    }
    Ok(direct)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreenRelation {
    L,
    R,
    H,
    D,
    J,
}

impl std::str::FromStr for GreenRelation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" => Ok(GreenRelation::L),
            "R" => Ok(GreenRelation::R),
            "H" => Ok(GreenRelation::H),
            "D" => Ok(GreenRelation::D),
            "J" => Ok(GreenRelation::J),
            _ => Err(Error::Precondition(format!("unknown relation {s}"))),
        }
    }
}

/// A certificate that two elements are related: the unit multiplier(s)
/// realizing `a = mu b`, `a = b nu`, or `a = mu b nu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenWitness {
    pub relation: GreenRelation,
    pub mu: Option<Perm>,
    pub nu: Option<Perm>,
}

fn find_left_unit(a: &PiecewiseMap, b: &PiecewiseMap) -> Result<Option<Perm>> {
    for mu in Perm::all(3) {
        if PiecewiseMap::unit(mu.clone()).compose(b)?.equals(a)? {
            return Ok(Some(mu));
        }
    }
    Ok(None)
}

fn find_right_unit(a: &PiecewiseMap, b: &PiecewiseMap) -> Result<Option<Perm>> {
    for nu in Perm::all(3) {
        if b.compose(&PiecewiseMap::unit(nu.clone()))?.equals(a)? {
            return Ok(Some(nu));
        }
    }
    Ok(None)
}

/// Decide whether `a` and `b` are Green's-related, returning the
/// lexicographically least witnessing unit(s). All five relations reduce
/// to unit multiplication in this monoid at dimension 3; the J relation
/// coincides with D.
pub fn green(rel: GreenRelation, a: &PiecewiseMap, b: &PiecewiseMap) -> Result<Option<GreenWitness>> {
    require_dim3(a)?;
    require_dim3(b)?;
    match rel {
        GreenRelation::L => Ok(find_left_unit(a, b)?.map(|mu| GreenWitness {
            relation: rel,
            mu: Some(mu),
            nu: None,
        })),
        GreenRelation::R => Ok(find_right_unit(a, b)?.map(|nu| GreenWitness {
            relation: rel,
            mu: None,
            nu: Some(nu),
        })),
        GreenRelation::H => {
            match (find_left_unit(a, b)?, find_right_unit(a, b)?) {
                (Some(mu), Some(nu)) => Ok(Some(GreenWitness {
                    relation: rel,
                    mu: Some(mu),
                    nu: Some(nu),
                })),
                _ => Ok(None),
            }
        }
        GreenRelation::D | GreenRelation::J => {
            for mu in Perm::all(3) {
                let mb = PiecewiseMap::unit(mu.clone()).compose(b)?;
                for nu in Perm::all(3) {
                    if mb.compose(&PiecewiseMap::unit(nu.clone()))?.equals(a)? {
                        return Ok(Some(GreenWitness {
                            relation: rel,
                            mu: Some(mu),
                            nu: Some(nu),
                        }));
                    }
                }
            }
            Ok(None)
        }
    }
}

/// The full L- or R-class of `a`: unit multiples, deduplicated; always
/// exactly six elements at dimension 3.
pub fn green_class(rel: GreenRelation, a: &PiecewiseMap) -> Result<Vec<PiecewiseMap>> {
    require_dim3(a)?;
    let mut class: Vec<PiecewiseMap> = Vec::new();
    for u in units(3) {
        let m = match rel {
            GreenRelation::L => u.compose(a)?,
            GreenRelation::R => a.compose(&u)?,
            _ => {
                return Err(Error::Precondition(
                    "green_class supports only the L and R relations".into(),
                ))
            }
        };
        let mut dup = false;
        for c in &class {
            if c.equals(&m)? {
                dup = true;
                break;
            }
        }
        if !dup {
            class.push(m);
        }
    }
    if class.len() != 6 {
        return Err(Error::TheoremViolation(format!(
            "L/R-class has {} distinct elements, expected exactly 6",
            class.len()
        )));
    }
    Ok(class)
}

/// Given `a = b a g`, find units realizing the same sandwich:
/// `a = sigma_b a sigma_g`. Existence is a theorem; failure to find a
/// pair is reported as a theorem violation.
pub fn sandwich_units(
    a: &PiecewiseMap,
    b: &PiecewiseMap,
    g: &PiecewiseMap,
) -> Result<(Perm, Perm)> {
    require_dim3(a)?;
    if !b.compose(a)?.compose(g)?.equals(a)? {
        return Err(Error::Precondition(
            "sandwich_units requires a = b a g".into(),
        ));
    }
    for sb in Perm::all(3) {
        let left = PiecewiseMap::unit(sb.clone()).compose(a)?;
        for sg in Perm::all(3) {
            if left.compose(&PiecewiseMap::unit(sg.clone()))?.equals(a)? {
                return Ok((sb, sg));
            }
        }
    }
    Err(Error::TheoremViolation(
        "no unit pair realizes the sandwich identity".into(),
    ))
}

/// Given `(a b)` restricted to the cofinite region `set` is the identity,
/// find the unit agreeing with `a` on `set` (and with the inverse of that
/// unit agreeing with `b` on the image of `set`).
pub fn cofactor_units(
    a: &PiecewiseMap,
    b: &PiecewiseMap,
    set: &RegionSet,
) -> Result<Perm> {
    require_dim3(a)?;
    let iota = restriction_idempotent(set)?;
    if !iota.compose(a)?.compose(b)?.equals(&iota)? {
        return Err(Error::Precondition(
            "cofactor_units requires (a b) to be the identity on the region".into(),
        ));
    }
    let restricted_a = iota.compose(a)?;
    let iota_image = restriction_idempotent(&restricted_a.ran_region())?;
    for s in Perm::all(3) {
        let u = PiecewiseMap::unit(s.clone());
        if !iota.compose(&u)?.equals(&restricted_a)? {
            continue;
        }
        let u_inv = PiecewiseMap::unit(s.inverse());
        if iota_image.compose(b)?.equals(&iota_image.compose(&u_inv)?)? {
            return Ok(s);
        }
    }
    Err(Error::TheoremViolation(
        "no unit agrees with the left cofactor on the region".into(),
    ))
}

/// Given `a = g b d`, trim the outer factors to canonical ones whose
/// domains and ranges match those of `a` and `b` exactly.
pub fn trim_factorization(
    g: &PiecewiseMap,
    d: &PiecewiseMap,
    a: &PiecewiseMap,
    b: &PiecewiseMap,
) -> Result<(PiecewiseMap, PiecewiseMap)> {
    if !g.compose(b)?.compose(d)?.equals(a)? {
        return Err(Error::Precondition(
            "trim_factorization requires a = g b d".into(),
        ));
    }
    let iota_dom_a = restriction_idempotent(&a.dom_region())?;
    let iota_dom_b = restriction_idempotent(&b.dom_region())?;
    let iota_ran_a = restriction_idempotent(&a.ran_region())?;
    let iota_ran_b = restriction_idempotent(&b.ran_region())?;
    let g_star = iota_dom_a.compose(g)?.compose(&iota_dom_b)?;
    let d_star = iota_ran_b.compose(d)?.compose(&iota_ran_a)?;
    let ok = g_star.compose(b)?.compose(&d_star)?.equals(a)?
        && g_star.dom_region() == a.dom_region()
        && g_star.ran_region() == b.dom_region()
        && d_star.dom_region() == b.ran_region()
        && d_star.ran_region() == a.ran_region();
    if !ok {
        return Err(Error::TheoremViolation(
            "trimmed factors fail the domain/range equations".into(),
        ));
    }
    Ok((g_star, d_star))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(cs: &[i64]) -> Point {
        Point::new(cs.to_vec()).unwrap()
    }

    fn varpi(c: i64) -> PiecewiseMap {
        PiecewiseMap::cylinder_shift(3, 0, &[0, c, c], -1).unwrap()
    }

    fn eps(pts: &[&[i64]]) -> PiecewiseMap {
        PiecewiseMap::identity_off(3, pts.iter().map(|c| pt(c)).collect()).unwrap()
    }

    #[test]
    fn unit_group_orders() {
        assert_eq!(units(3).len(), 6);
        assert_eq!(units(2).len(), 2);
    }

    #[test]
    fn unit_cayley_table_matches_permutations() {
        let perms = Perm::all(3);
        let maps = units(3);
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let composed = maps[i].compose(&maps[j]).unwrap();
                let expected = PiecewiseMap::unit(p.then(q));
                assert!(composed.equals(&expected).unwrap());
            }
        }
    }

    #[test]
    fn axis_permutation_examples() {
        let swap = Perm::transposition(3, 0, 1);
        assert_eq!(
            axis_permutation(&PiecewiseMap::unit(swap.clone())).unwrap(),
            swap
        );
        assert!(axis_permutation(&varpi(2)).unwrap().is_identity());
        assert!(axis_permutation(&eps(&[&[2, 2, 2]])).unwrap().is_identity());
    }

    #[test]
    fn normalize_examples() {
        let swap = Perm::transposition(3, 0, 1);
        let (sigma, normal) = normalize(&PiecewiseMap::unit(swap.clone())).unwrap();
        assert_eq!(sigma, swap);
        assert!(normal.equals(&PiecewiseMap::identity(3)).unwrap());

        let (sigma, normal) = normalize(&varpi(2)).unwrap();
        assert!(sigma.is_identity());
        assert!(normal.equals(&varpi(2)).unwrap());

        let cycle = Perm::new(vec![1, 2, 0]).unwrap();
        let twisted = varpi(2).compose(&PiecewiseMap::unit(cycle.clone())).unwrap();
        let (sigma, normal) = normalize(&twisted).unwrap();
        assert_eq!(sigma, cycle.inverse());
        assert!(normal.equals(&varpi(2)).unwrap());
    }

    #[test]
    fn plane_preservation_examples() {
        assert!(plane_preservation_check(&varpi(2)).unwrap());
        assert!(plane_preservation_check(&eps(&[&[3, 1, 2]])).unwrap());
        let other = PiecewiseMap::cylinder_shift(3, 1, &[3, 0, 3], -2).unwrap();
        let composed = varpi(2).compose(&other).unwrap();
        assert!(plane_preservation_check(&composed).unwrap());
    }

    #[test]
    fn plane_preservation_rejects_unnormalized() {
        let u = PiecewiseMap::unit(Perm::transposition(3, 0, 1));
        assert!(matches!(
            plane_preservation_check(&u),
            Err(Error::NotNormalized)
        ));
    }

    #[test]
    fn decrease_and_threshold_varpi() {
        let w = varpi(2);
        assert!(pointwise_decrease_check(&w).unwrap());
        assert_eq!(n_alpha(&w).unwrap(), 3);
        // minimality: (2,2,2) corner still sees movement at (5,2,2)
        assert_eq!(w.evaluate(&pt(&[5, 2, 2])).unwrap(), Some(pt(&[4, 2, 2])));
    }

    #[test]
    fn threshold_trivial_cases() {
        assert_eq!(n_alpha(&PiecewiseMap::identity(3)).unwrap(), 1);
        assert_eq!(n_alpha(&eps(&[&[4, 4, 4]])).unwrap(), 1);
    }

    #[test]
    fn idempotent_examples() {
        assert!(is_idempotent(&eps(&[&[2, 1, 1]])).unwrap());
        assert!(is_idempotent(&PiecewiseMap::identity(3)).unwrap());
        assert!(!is_idempotent(&varpi(2)).unwrap());
    }

    #[test]
    fn idempotent_product_is_union() {
        let a = eps(&[&[1, 1, 1]]);
        let b = eps(&[&[2, 1, 1]]);
        let p = idempotent_product(&a, &b).unwrap();
        assert_eq!(
            semilattice_iso(&p).unwrap(),
            vec![pt(&[1, 1, 1]), pt(&[2, 1, 1])]
        );
        let q = idempotent_product(&b, &a).unwrap();
        assert!(p.equals(&q).unwrap());
    }

    #[test]
    fn identity_is_semilattice_unit() {
        let i = PiecewiseMap::identity(3);
        assert!(semilattice_iso(&i).unwrap().is_empty());
        let a = eps(&[&[3, 2, 1]]);
        assert!(idempotent_product(&i, &a).unwrap().equals(&a).unwrap());
    }

    #[test]
    fn absorption_examples() {
        let w = varpi(2);
        // hole disjoint from dom(w): (1,1,1) is already outside dom(w)
        let e = eps(&[&[1, 1, 1]]);
        assert!(left_absorbs(&e, &w).unwrap());
        let u = PiecewiseMap::unit(Perm::transposition(3, 0, 1));
        assert!(!left_absorbs(&u, &w).unwrap());
        // w is surjective, so only the identity right-absorbs
        assert!(right_absorbs(&PiecewiseMap::identity(3), &w).unwrap());
        let a = eps(&[&[2, 2, 2]]);
        let e_ran = eps(&[&[2, 2, 2]]);
        assert!(right_absorbs(&e_ran, &a).unwrap());
    }

    #[test]
    fn green_reflexive_and_constructed() {
        let w = varpi(2);
        let wit = green(GreenRelation::L, &w, &w).unwrap().unwrap();
        assert!(wit.mu.unwrap().is_identity());

        let swap = Perm::transposition(3, 0, 1);
        let moved = PiecewiseMap::unit(swap.clone()).compose(&w).unwrap();
        let wit = green(GreenRelation::L, &moved, &w).unwrap().unwrap();
        assert_eq!(wit.mu.unwrap(), swap);
    }

    #[test]
    fn green_not_related() {
        let e = eps(&[&[1, 1, 1]]);
        assert!(green(GreenRelation::D, &e, &varpi(2)).unwrap().is_none());
    }

    #[test]
    fn green_j_delegates_to_d() {
        let w = varpi(2);
        let u = PiecewiseMap::unit(Perm::new(vec![2, 0, 1]).unwrap());
        let conj = u.compose(&w).unwrap();
        let wit = green(GreenRelation::J, &conj, &w).unwrap().unwrap();
        assert_eq!(wit.relation, GreenRelation::J);
        assert!(wit.mu.is_some() && wit.nu.is_some());
    }

    #[test]
    fn green_rejects_other_dimensions() {
        let i2 = PiecewiseMap::identity(2);
        assert!(matches!(
            green(GreenRelation::L, &i2, &i2),
            Err(Error::UnsupportedDimension(2))
        ));
    }

    #[test]
    fn class_sizes_are_six() {
        assert_eq!(green_class(GreenRelation::L, &varpi(2)).unwrap().len(), 6);
        assert_eq!(
            green_class(GreenRelation::R, &eps(&[&[2, 1, 1]])).unwrap().len(),
            6
        );
    }

    #[test]
    fn h_class_of_identity_is_unit_group() {
        // elements H-related to the identity: count over the unit group
        let i = PiecewiseMap::identity(3);
        let mut count = 0;
        for u in units(3) {
            if green(GreenRelation::H, &u, &i).unwrap().is_some() {
                count += 1;
            }
        }
        assert_eq!(count, 6);
    }

    #[test]
    fn sandwich_trivial_and_conjugate() {
        let w = varpi(2);
        let i = PiecewiseMap::identity(3);
        let (sb, sg) = sandwich_units(&w, &i, &i).unwrap();
        assert!(sb.is_identity() && sg.is_identity());

        // a = u a u^-1 for a symmetric-enough a: use an idempotent whose
        // complement is invariant under the swap
        let swap = Perm::transposition(3, 0, 1);
        let a = eps(&[&[1, 1, 2]]);
        let u = PiecewiseMap::unit(swap.clone());
        let ui = PiecewiseMap::unit(swap.inverse());
        assert!(u.compose(&a).unwrap().compose(&ui).unwrap().equals(&a).unwrap());
        let (sb, sg) = sandwich_units(&a, &u, &ui).unwrap();
        let check = PiecewiseMap::unit(sb)
            .compose(&a)
            .unwrap()
            .compose(&PiecewiseMap::unit(sg))
            .unwrap();
        assert!(check.equals(&a).unwrap());
    }

    #[test]
    fn sandwich_precondition_enforced() {
        let w = varpi(2);
        let u = PiecewiseMap::unit(Perm::transposition(3, 0, 1));
        assert!(matches!(
            sandwich_units(&w, &u, &u),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cofactor_examples() {
        let full = RegionSet::full(3);
        let i = PiecewiseMap::identity(3);
        assert!(cofactor_units(&i, &i, &full).unwrap().is_identity());

        let u_perm = Perm::new(vec![1, 2, 0]).unwrap();
        let u = PiecewiseMap::unit(u_perm.clone());
        let ui = PiecewiseMap::unit(u_perm.inverse());
        assert_eq!(cofactor_units(&u, &ui, &full).unwrap(), u_perm);

        // a agrees with u only off a finite set
        let e = eps(&[&[1, 2, 3]]);
        let a = e.compose(&u).unwrap();
        let region = e.dom_region();
        assert_eq!(cofactor_units(&a, &ui, &region).unwrap(), u_perm);
    }

    #[test]
    fn trim_examples() {
        let w = varpi(2);
        let i = PiecewiseMap::identity(3);
        let (g_star, d_star) = trim_factorization(&i, &i, &w, &w).unwrap();
        assert_eq!(g_star.dom_region(), w.dom_region());
        assert_eq!(g_star.ran_region(), w.dom_region());
        assert_eq!(d_star.dom_region(), w.ran_region());
        assert_eq!(d_star.ran_region(), w.ran_region());
    }

    #[test]
    fn trim_random_unit_factorization() {
        let w = varpi(2);
        let mu = PiecewiseMap::unit(Perm::new(vec![2, 0, 1]).unwrap());
        let nu = PiecewiseMap::unit(Perm::transposition(3, 1, 2));
        let a = mu.compose(&w).unwrap().compose(&nu).unwrap();
        let (g_star, d_star) = trim_factorization(&mu, &nu, &a, &w).unwrap();
        assert!(g_star
            .compose(&w)
            .unwrap()
            .compose(&d_star)
            .unwrap()
            .equals(&a)
            .unwrap());
    }

    #[test]
    fn power_identity_from_sandwich() {
        // whenever a = b a g, also a = b^6 a g^6
        let swap = Perm::transposition(3, 0, 1);
        let a = eps(&[&[1, 1, 2]]);
        let b = PiecewiseMap::unit(swap.clone());
        let g = PiecewiseMap::unit(swap.inverse());
        assert!(b.compose(&a).unwrap().compose(&g).unwrap().equals(&a).unwrap());
        let mut b6 = PiecewiseMap::identity(3);
        let mut g6 = PiecewiseMap::identity(3);
        for _ in 0..6 {
            b6 = b6.compose(&b).unwrap();
            g6 = g6.compose(&g).unwrap();
        }
        assert!(b6.compose(&a).unwrap().compose(&g6).unwrap().equals(&a).unwrap());
    }
}
