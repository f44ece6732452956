//! Constructors for the named surfaces of revolution and their families,
//! plus intrinsic dilation and vertical translation.

use crate::error::{Error, Result};
use crate::geometry::{AnalyticProfile, CurveJet, DifferencedProfile, ProfileCurve, ProfileFn};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// Catalog descriptor. The canonical textual form understood by
/// [`SurfaceSpec::parse`] is e.g. `pansu:R=1`, `pm:L=0.25`, `koranyi:R=1`,
/// `cylinder:r=1`, `plane`, `dilate:lambda=2:(pm:L=0.5)`,
/// `translate:dt=0.5:(pansu:R=1)`.
#[derive(Clone, Debug)]
pub enum SurfaceSpec {
    Plane,
    Cylinder {
        radius: f64,
    },
    /// The one-parameter competitor family through the constant-curvature
    /// sphere, parametrized on (0, 2π); `radius = 1` is the sphere itself.
    Pansu {
        radius: f64,
    },
    /// The (−π/2, π/2) parametrization of the same sphere, intrinsically
    /// dilated by `radius`; kept for cross-checks.
    PansuAlt {
        radius: f64,
    },
    /// The gauge-sphere family (R√cos s, sin s / 2).
    Koranyi {
        radius: f64,
    },
    /// The critical sphere S_L of the total-mean-curvature problem,
    /// L ∈ (0, 1/2].
    PansuMinkowski {
        l: f64,
    },
    Dilated {
        base: Box<SurfaceSpec>,
        lambda: f64,
    },
    Translated {
        base: Box<SurfaceSpec>,
        dt: f64,
    },
    Custom(ProfileCurve),
}

/// Parameters of the critical sphere S_L.
#[derive(Clone, Copy, Debug)]
pub struct PmParams {
    pub l: f64,
    /// k = 1 − 2L.
    pub k: f64,
    /// Half-width of the parameter domain, arccos √k.
    pub s_max: f64,
}

impl PmParams {
    pub fn new(l: f64) -> Result<Self> {
        if !(l > 0.0 && l <= 0.5) {
            return Err(Error::InvalidParameter(format!(
                "the critical family requires L in (0, 1/2], got {l}"
            )));
        }
        let k = 1.0 - 2.0 * l;
        Ok(PmParams {
            l,
            k,
            s_max: k.sqrt().acos(),
        })
    }

    /// x_L(s) = (cos s − k/cos s)/(2L).
    pub fn x(&self, s: f64) -> f64 {
        let c = s.cos();
        (c - self.k / c) / (2.0 * self.l)
    }

    /// The auxiliary function h(s) = (cos s + k/cos s)/(2L); it satisfies
    /// ṫ = x·h and ẋ = −tan(s)·h.
    pub fn h(&self, s: f64) -> f64 {
        let c = s.cos();
        (c + self.k / c) / (2.0 * self.l)
    }

    pub fn t(&self, s: f64) -> f64 {
        (s / 2.0 + (2.0 * s).sin() / 4.0 - self.k * self.k * s.tan()) / (4.0 * self.l * self.l)
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "{name} must be positive, got {v}"
        )));
    }
    Ok(())
}

fn analytic(
    domain: (f64, f64),
    char_eps: (bool, bool),
    f: impl Fn(f64) -> CurveJet + Send + Sync + 'static,
) -> ProfileCurve {
    ProfileCurve::new(domain, char_eps, Arc::new(AnalyticProfile(f)))
}

/// Build the profile curve of a catalog surface.
pub fn make_surface(spec: &SurfaceSpec) -> Result<ProfileCurve> {
    match spec {
        SurfaceSpec::Plane => Ok(analytic((0.0, 2.0), (true, false), |s| CurveJet {
            x: [s, 1.0, 0.0, 0.0],
            t: [0.0, 0.0, 0.0, 0.0],
        })),
        SurfaceSpec::Cylinder { radius } => {
            check_positive("radius", *radius)?;
            let r = *radius;
            Ok(analytic((0.0, 1.0), (false, false), move |s| CurveJet {
                x: [r, 0.0, 0.0, 0.0],
                t: [s, 1.0, 0.0, 0.0],
            }))
        }
        SurfaceSpec::Pansu { radius } => {
            check_positive("R", *radius)?;
            let r = *radius;
            Ok(analytic((0.0, 2.0 * PI), (true, true), move |s| {
                let (sh, ch) = (0.5 * s).sin_cos();
                let (sn, cn) = s.sin_cos();
                CurveJet {
                    x: [r * sh, 0.5 * r * ch, -0.25 * r * sh, -0.125 * r * ch],
                    t: [
                        0.25 * (s - sn - PI),
                        0.25 * (1.0 - cn),
                        0.25 * sn,
                        0.25 * cn,
                    ],
                }
            }))
        }
        SurfaceSpec::PansuAlt { radius } => {
            check_positive("R", *radius)?;
            let r = *radius;
            let r2 = r * r;
            Ok(analytic((-PI / 2.0, PI / 2.0), (true, true), move |s| {
                let (sn, cn) = s.sin_cos();
                let (s2, c2) = (2.0 * s).sin_cos();
                CurveJet {
                    x: [r * cn, -r * sn, -r * cn, r * sn],
                    t: [
                        r2 * (0.5 * s + 0.25 * s2),
                        r2 * cn * cn,
                        -r2 * s2,
                        -2.0 * r2 * c2,
                    ],
                }
            }))
        }
        SurfaceSpec::Koranyi { radius } => {
            check_positive("R", *radius)?;
            let r = *radius;
            Ok(analytic((-PI / 2.0, PI / 2.0), (true, true), move |s| {
                let (sn, cn) = s.sin_cos();
                let rc = cn.sqrt();
                // x = R sqrt(cos s)
                let x = r * rc;
                let dx = -0.5 * r * sn / rc;
                let ddx = -0.5 * r * (rc + 0.5 * sn * sn / (rc * cn));
                let dddx = -0.5 * r * (0.5 * sn / rc + 0.75 * sn.powi(3) / (rc * cn * cn));
                CurveJet {
                    x: [x, dx, ddx, dddx],
                    t: [0.5 * sn, 0.5 * cn, -0.5 * sn, -0.5 * cn],
                }
            }))
        }
        SurfaceSpec::PansuMinkowski { l } => {
            let pm = PmParams::new(*l)?;
            Ok(analytic((-pm.s_max, pm.s_max), (true, true), move |s| {
                let c = s.cos();
                let tn = s.tan();
                let x = pm.x(s);
                let h = pm.h(s);
                let c2 = c * c;
                CurveJet {
                    x: [
                        x,
                        -tn * h,
                        -h / c2 + tn * tn * x,
                        3.0 * x * tn / c2 - 2.0 * h * tn / c2 - h * tn.powi(3),
                    ],
                    t: [
                        pm.t(s),
                        x * h,
                        -tn * (h * h + x * x),
                        -(x * x + h * h) / c2 + 4.0 * x * h * tn * tn,
                    ],
                }
            }))
        }
        SurfaceSpec::Dilated { base, lambda } => {
            let inner = make_surface(base)?;
            dilate(&inner, *lambda)
        }
        SurfaceSpec::Translated { base, dt } => {
            let inner = make_surface(base)?;
            Ok(translate(&inner, *dt))
        }
        SurfaceSpec::Custom(profile) => Ok(profile.clone()),
    }
}

/// Intrinsic dilation δ_λ: (x, t) ↦ (λx, λ²t), derivatives scaled alike.
pub fn dilate(profile: &ProfileCurve, lambda: f64) -> Result<ProfileCurve> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "dilation factor must be positive, got {lambda}"
        )));
    }
    struct Dilated {
        inner: ProfileCurve,
        lambda: f64,
    }
    impl Dilated {
        fn map(&self, mut j: CurveJet) -> CurveJet {
            let l2 = self.lambda * self.lambda;
            for k in 0..4 {
                j.x[k] *= self.lambda;
                j.t[k] *= l2;
            }
            j
        }
    }
    impl ProfileFn for Dilated {
        fn eval2(&self, s: f64) -> CurveJet {
            self.map(self.inner.eval(s, 2))
        }
        fn eval3(&self, s: f64) -> CurveJet {
            self.map(self.inner.eval(s, 3))
        }
    }
    Ok(ProfileCurve::new(
        profile.domain(),
        profile.characteristic_endpoints(),
        Arc::new(Dilated {
            inner: profile.clone(),
            lambda,
        }),
    ))
}

/// Vertical translation (x, t) ↦ (x, t + dt).
pub fn translate(profile: &ProfileCurve, dt: f64) -> ProfileCurve {
    struct Translated {
        inner: ProfileCurve,
        dt: f64,
    }
    impl ProfileFn for Translated {
        fn eval2(&self, s: f64) -> CurveJet {
            let mut j = self.inner.eval(s, 2);
            j.t[0] += self.dt;
            j
        }
        fn eval3(&self, s: f64) -> CurveJet {
            let mut j = self.inner.eval(s, 3);
            j.t[0] += self.dt;
            j
        }
    }
    ProfileCurve::new(
        profile.domain(),
        profile.characteristic_endpoints(),
        Arc::new(Translated {
            inner: profile.clone(),
            dt,
        }),
    )
}

/// A custom profile from coordinate closures; derivatives come from
/// five-point central differences with step 1e-5 · (domain length).
pub fn custom_profile(
    domain: (f64, f64),
    characteristic_endpoints: (bool, bool),
    x: impl Fn(f64) -> f64 + Send + Sync + 'static,
    t: impl Fn(f64) -> f64 + Send + Sync + 'static,
) -> ProfileCurve {
    let step = 1e-5 * (domain.1 - domain.0);
    ProfileCurve::new(
        domain,
        characteristic_endpoints,
        Arc::new(DifferencedProfile {
            x: Box::new(x),
            t: Box::new(t),
            step,
        }),
    )
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceSpec::Plane => write!(f, "plane"),
            SurfaceSpec::Cylinder { radius } => write!(f, "cylinder:r={radius}"),
            SurfaceSpec::Pansu { radius } => write!(f, "pansu:R={radius}"),
            SurfaceSpec::PansuAlt { radius } => write!(f, "pansualt:R={radius}"),
            SurfaceSpec::Koranyi { radius } => write!(f, "koranyi:R={radius}"),
            SurfaceSpec::PansuMinkowski { l } => write!(f, "pm:L={l}"),
            SurfaceSpec::Dilated { base, lambda } => write!(f, "dilate:lambda={lambda}:({base})"),
            SurfaceSpec::Translated { base, dt } => write!(f, "translate:dt={dt}:({base})"),
            SurfaceSpec::Custom(_) => write!(f, "custom"),
        }
    }
}

impl SurfaceSpec {
    /// Parse the canonical textual form. Never panics; malformed input
    /// yields [`Error::Parse`].
    pub fn parse(text: &str) -> Result<SurfaceSpec> {
        let text = text.trim();
        let bad = |msg: &str| Error::Parse(format!("{msg} in surface spec `{text}`"));

        fn param(part: &str, key: &str, text: &str) -> Result<f64> {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected `{key}=<value>` in `{text}`")))?;
            if k != key {
                return Err(Error::Parse(format!(
                    "expected parameter `{key}`, found `{k}` in `{text}`"
                )));
            }
            v.parse::<f64>()
                .map_err(|_| Error::Parse(format!("cannot parse number `{v}` in `{text}`")))
        }

        if text == "plane" {
            return Ok(SurfaceSpec::Plane);
        }
        let (head, rest) = match text.split_once(':') {
            Some(p) => p,
            None => return Err(bad("unknown surface")),
        };
        match head {
            "cylinder" => Ok(SurfaceSpec::Cylinder {
                radius: param(rest, "r", text)?,
            }),
            "pansu" => Ok(SurfaceSpec::Pansu {
                radius: param(rest, "R", text)?,
            }),
            "pansualt" => Ok(SurfaceSpec::PansuAlt {
                radius: param(rest, "R", text)?,
            }),
            "koranyi" => Ok(SurfaceSpec::Koranyi {
                radius: param(rest, "R", text)?,
            }),
            "pm" => Ok(SurfaceSpec::PansuMinkowski {
                l: param(rest, "L", text)?,
            }),
            "dilate" | "translate" => {
                let (par, inner) = rest
                    .split_once(':')
                    .ok_or_else(|| bad("expected `:(...)` with a base surface"))?;
                let inner = inner
                    .strip_prefix('(')
                    .and_then(|i| i.strip_suffix(')'))
                    .ok_or_else(|| bad("base surface must be parenthesized"))?;
                let base = Box::new(SurfaceSpec::parse(inner)?);
                if head == "dilate" {
                    Ok(SurfaceSpec::Dilated {
                        base,
                        lambda: param(par, "lambda", text)?,
                    })
                } else {
                    Ok(SurfaceSpec::Translated {
                        base,
                        dt: param(par, "dt", text)?,
                    })
                }
            }
            _ => Err(bad("unknown surface")),
        }
    }
}
