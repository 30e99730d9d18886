use super::StickinessKind;

/// Fraction of customers staying with a CP priced `own` against a rival
/// priced `other`.
///
/// Both kinds satisfy `s(x, x) = 1/2` and `s(x, y) + s(y, x) = 1`.
/// A zero denominator (both CPs free under `Reciprocal`, both at `pmax`
/// under `Slackness`) is a symmetric tie and returns `1/2`.
pub fn stickiness_share(kind: StickinessKind, own: f64, other: f64, pmax: f64) -> f64 {
    let (num, den) = match kind {
        StickinessKind::Reciprocal => (other, own + other),
        StickinessKind::Slackness => (pmax - own, (pmax - own) + (pmax - other)),
    };
    if den <= 0.0 {
        0.5
    } else {
        num / den
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_examples() {
        assert_eq!(stickiness_share(StickinessKind::Reciprocal, 0.2, 0.2, 1.0), 0.5);
        assert!((stickiness_share(StickinessKind::Reciprocal, 0.1, 0.3, 1.0) - 0.75).abs() < 1e-15);
        assert_eq!(stickiness_share(StickinessKind::Reciprocal, 0.0, 0.0, 1.0), 0.5);
        assert_eq!(stickiness_share(StickinessKind::Reciprocal, 0.3, 0.0, 1.0), 0.0);
    }

    #[test]
    fn slackness_examples() {
        let s = stickiness_share(StickinessKind::Slackness, 0.2, 0.6, 1.0);
        assert!((s - 2.0 / 3.0).abs() < 1e-15);
        let t = stickiness_share(StickinessKind::Slackness, 0.6, 0.2, 1.0);
        assert!((s + t - 1.0).abs() < 1e-15);
        assert_eq!(stickiness_share(StickinessKind::Slackness, 1.0, 1.0, 1.0), 0.5);
    }
}
