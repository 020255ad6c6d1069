//! Probabilistic LoS channel for air links and log-distance ground link.

use crate::error::{Error, Result};
use crate::scenario::{LinearChannel, Position3D};

/// Reference distance of the path-loss model, meters.
pub const REFERENCE_DISTANCE: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LinkKind {
    /// MBS to UAV.
    G2A,
    /// UAV (or UVAA center) to a ground node.
    A2G,
    /// MBS to ground eavesdropper.
    G2G,
    /// UAV to UAV. Only used by the multi-hop baseline; modeled as pure LoS.
    A2A,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkGeometry {
    /// Vertical distance, meters (absolute).
    pub dv: f64,
    /// Horizontal distance, meters.
    pub dh: f64,
    /// 3D distance, meters.
    pub d: f64,
    /// Elevation angle, degrees in [0, 90].
    pub zeta: f64,
}

impl LinkGeometry {
    pub fn between(a: &Position3D, b: &Position3D) -> Self {
        let dv = (b.z - a.z).abs();
        let dh = a.horizontal_distance(b);
        let d = dv.hypot(dh);
        let zeta = if dh == 0.0 {
            90.0
        } else {
            (dv / dh).atan().to_degrees()
        };
        Self { dv, dh, d, zeta }
    }
}

/// Logistic LoS probability with the elevation angle in degrees.
pub fn los_probability(geom: &LinkGeometry, ch: &LinearChannel) -> f64 {
    los_probability_at(geom.zeta, ch.a, ch.b)
}

pub fn los_probability_at(zeta_deg: f64, a: f64, b: f64) -> f64 {
    1.0 / (1.0 + a * (-b * (zeta_deg - a)).exp())
}

/// Expected linear channel power gain of a link.
pub fn channel_gain(kind: LinkKind, geom: &LinkGeometry, ch: &LinearChannel) -> Result<f64> {
    if geom.d < REFERENCE_DISTANCE {
        return Err(Error::Domain {
            distance: geom.d,
            reference: REFERENCE_DISTANCE,
        });
    }
    let gain = match kind {
        LinkKind::G2A | LinkKind::A2G => {
            let p_los = los_probability(geom, ch);
            blended_gain(p_los, geom.d, ch)
        }
        LinkKind::G2G => ch.beta0 * geom.d.powf(-ch.alpha_g),
        LinkKind::A2A => ch.beta0 * geom.d.powf(-ch.alpha_los),
    };
    Ok(gain)
}

/// `P_los * h_los + (1 - P_los) * h_nlos` at distance `d`.
pub fn blended_gain(p_los: f64, d: f64, ch: &LinearChannel) -> f64 {
    let h_los = ch.beta0 * d.powf(-ch.alpha_los);
    let h_nlos = ch.mu * ch.beta0 * d.powf(-ch.alpha_nlos);
    p_los * h_los + (1.0 - p_los) * h_nlos
}

/// Gain between two points, clamping the distance up to the reference distance.
pub(crate) fn gain_between(kind: LinkKind, a: &Position3D, b: &Position3D, ch: &LinearChannel) -> f64 {
    let mut geom = LinkGeometry::between(a, b);
    if geom.d < REFERENCE_DISTANCE {
        geom.d = REFERENCE_DISTANCE;
    }
    channel_gain(kind, &geom, ch).expect("distance clamped to the reference distance")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::ChannelParams;
    use proptest::prelude::*;

    fn ch() -> LinearChannel {
        ChannelParams::default().linear()
    }

    fn geom(d: f64, zeta: f64) -> LinkGeometry {
        let z = zeta.to_radians();
        LinkGeometry {
            dv: d * z.sin(),
            dh: d * z.cos(),
            d,
            zeta,
        }
    }

    #[test]
    fn los_at_zeta_equal_a() {
        let p = los_probability(&geom(10.0, 9.61), &ch());
        assert!((p - 1.0 / 10.61).abs() < 1e-12);
        assert!((p - 0.09425).abs() < 1e-5);
    }

    #[test]
    fn los_at_zenith() {
        let expected = 1.0 / (1.0 + 9.61 * (-0.16f64 * (90.0 - 9.61)).exp());
        let p = los_probability(&geom(10.0, 90.0), &ch());
        assert_eq!(p, expected);
        assert!((p - 0.999975).abs() < 1e-6);
    }

    #[test]
    fn reference_distance_gain_is_beta0() {
        let c = ch();
        assert!((blended_gain(1.0, 1.0, &c) - 1e-6).abs() < 1e-18);
        let g2g = channel_gain(LinkKind::G2G, &geom(1.0, 0.0), &c).unwrap();
        assert!((g2g - 1e-6).abs() < 1e-18);
    }

    #[test]
    fn a2g_regression_value() {
        // independent evaluation: P = 1/(1+9.61 e^{-0.16(45-9.61)}),
        // h = P*1e-6*100^-2.5 + (1-P)*1e-2*1e-6*100^-3.5
        let c = ch();
        let h = channel_gain(LinkKind::A2G, &geom(100.0, 45.0), &c).unwrap();
        assert!((h - 9.676_951_307_572_475e-12).abs() / h < 1e-9, "{h:e}");
    }

    #[test]
    fn below_reference_distance_is_an_error() {
        assert!(matches!(
            channel_gain(LinkKind::A2G, &geom(0.5, 30.0), &ch()),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn geometry_from_points() {
        let g = LinkGeometry::between(&Position3D::new(0.0, 0.0, 0.0), &Position3D::new(3.0, 4.0, 5.0));
        assert!((g.dh - 5.0).abs() < 1e-12);
        assert!((g.dv - 5.0).abs() < 1e-12);
        assert!((g.zeta - 45.0).abs() < 1e-12);
        assert!((g.d * g.d - (g.dv * g.dv + g.dh * g.dh)).abs() < 1e-9 * g.d * g.d);
        let up = LinkGeometry::between(&Position3D::ORIGIN, &Position3D::new(0.0, 0.0, 10.0));
        assert_eq!(up.zeta, 90.0);
    }

    proptest! {
        #[test]
        fn los_monotone_in_elevation(z1 in 0.0f64..90.0, dz in 1e-3f64..10.0) {
            let c = ch();
            let z2 = (z1 + dz).min(90.0);
            prop_assume!(z2 > z1);
            prop_assert!(los_probability_at(z1, c.a, c.b) < los_probability_at(z2, c.a, c.b));
        }

        #[test]
        fn gain_decreases_with_distance(d in 1.0f64..5000.0, dd in 0.1f64..100.0, zeta in 0.0f64..90.0) {
            let c = ch();
            for kind in [LinkKind::A2G, LinkKind::G2G] {
                let near = channel_gain(kind, &geom(d, zeta), &c).unwrap();
                let far = channel_gain(kind, &geom(d + dd, zeta), &c).unwrap();
                prop_assert!(far < near);
            }
        }

        #[test]
        fn blend_between_pure_states(d in 1.0f64..5000.0, zeta in 0.0f64..90.0) {
            let c = ch();
            let p = los_probability_at(zeta, c.a, c.b);
            let p_nlos = 1.0 - p;
            prop_assert_eq!(p + p_nlos, 1.0);
            let los = blended_gain(1.0, d, &c);
            let nlos = blended_gain(0.0, d, &c);
            let mix = blended_gain(p, d, &c);
            prop_assert!(los >= mix && mix >= nlos);
        }
    }
}
