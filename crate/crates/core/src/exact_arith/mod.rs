//! Exact rationals, Bernoulli numbers and certified interval evaluation.

mod bernoulli;
mod certified;
mod rational;

pub use bernoulli::{bernoulli, BernoulliTable};
pub use certified::{pi, round_to_integer, CertifiedReal, TrigContext};
pub use rational::{numerator_of, Rational};

/// Precision schedule for certified evaluations: start at `start_bits` and
/// double after every ambiguous rounding until `max_bits` is exceeded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start_bits: 128,
            max_bits: 16384,
        }
    }
}

impl PrecisionPolicy {
    /// The sequence of precisions to try, in order.
    pub fn schedule(&self) -> impl Iterator<Item = u32> {
        let max = self.max_bits;
        std::iter::successors(Some(self.start_bits.max(8)), move |&p| p.checked_mul(2))
            .take_while(move |&p| p <= max)
    }

    /// Runs `attempt` at each scheduled precision until it stops reporting
    /// `AmbiguousRounding`. Returns the value and the precision that worked.
    pub fn escalate<T>(
        &self,
        mut attempt: impl FnMut(u32) -> crate::Result<T>,
    ) -> crate::Result<(T, u32)> {
        let mut last = None;
        for bits in self.schedule() {
            match attempt(bits) {
                Ok(v) => return Ok((v, bits)),
                Err(e @ crate::Error::AmbiguousRounding { .. }) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last.unwrap_or(crate::Error::AmbiguousRounding {
            lower: "-inf".into(),
            upper: "inf".into(),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_doubles_up_to_cap() {
        let p = PrecisionPolicy::default();
        let v: Vec<u32> = p.schedule().collect();
        assert_eq!(v, vec![128, 256, 512, 1024, 2048, 4096, 8192, 16384]);
    }

    #[test]
    fn escalation_stops_at_first_success() {
        let p = PrecisionPolicy::default();
        let (v, bits) = p
            .escalate(|bits| {
                if bits < 1024 {
                    Err(crate::Error::AmbiguousRounding {
                        lower: "0".into(),
                        upper: "1".into(),
                    })
                } else {
                    Ok(bits)
                }
            })
            .unwrap();
        assert_eq!((v, bits), (1024, 1024));
        let capped = PrecisionPolicy {
            start_bits: 128,
            max_bits: 256,
        };
        let r: crate::Result<((), u32)> = capped.escalate(|_| {
            Err(crate::Error::AmbiguousRounding {
                lower: "0".into(),
                upper: "1".into(),
            })
        });
        assert!(matches!(r, Err(crate::Error::AmbiguousRounding { .. })));
    }
}
