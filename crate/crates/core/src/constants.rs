//! Fixed physical constants and unit conversions.
//!
//! Energies and rates are carried in meV, lengths in nm and times in ps.
//! Anything that mixes ħ, ε₀ and c is evaluated in SI through the factors below.

/// Reduced Planck constant [J·s].
pub const HBAR: f64 = 1.054_571_817e-34;
/// Vacuum permittivity [F/m].
pub const EPS0: f64 = 8.854_187_812_8e-12;
/// Speed of light [m/s].
pub const C_LIGHT: f64 = 2.997_924_58e8;
/// One Debye [C·m].
pub const DEBYE: f64 = 3.335_64e-30;
/// One meV [J].
pub const MEV: f64 = 1.602_176_634e-22;
/// λ[nm] · E[eV].
pub const HC_EV_NM: f64 = 1239.841_984;
/// ħ in meV·ps, used to turn meV rates into 1/ps.
pub const HBAR_MEV_PS: f64 = HBAR / MEV * 1e12;

/// Photon energy [meV] for a vacuum wavelength [nm].
pub fn wavelength_to_mev(lambda_nm: f64) -> f64 {
    HC_EV_NM / lambda_nm * 1e3
}

/// Vacuum wavelength [nm] for a photon energy [meV].
pub fn mev_to_wavelength(energy_mev: f64) -> f64 {
    HC_EV_NM / (energy_mev * 1e-3)
}

/// Angular frequency [rad/s] of an energy given in meV.
pub fn mev_to_rad_per_s(energy_mev: f64) -> f64 {
    energy_mev * MEV / HBAR
}

/// Rate in meV expressed as an inverse time [1/ps].
pub fn mev_to_per_ps(rate_mev: f64) -> f64 {
    rate_mev / HBAR_MEV_PS
}

/// Lifetime [ps] of a rate in meV.
pub fn lifetime_ps(rate_mev: f64) -> f64 {
    HBAR_MEV_PS / rate_mev
}

pub fn debye_to_si(d: f64) -> f64 {
    d * DEBYE
}

pub fn si_to_debye(cm: f64) -> f64 {
    cm / DEBYE
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wavelength_round_trip() {
        for lam in [400.0, 535.5, 577.038, 900.0] {
            let back = mev_to_wavelength(wavelength_to_mev(lam));
            assert!((back - lam).abs() / lam < 1e-14);
        }
    }

    #[test]
    fn exciton_line_sits_near_577() {
        let lam = mev_to_wavelength(2149.0);
        assert!((lam - 576.939).abs() < 1e-3, "{lam}");
    }

    #[test]
    fn debye_round_trip() {
        let x = 72.0;
        assert!((si_to_debye(debye_to_si(x)) - x).abs() / x < 1e-12);
    }

    #[test]
    fn hbar_in_mev_ps() {
        assert!((HBAR_MEV_PS - 0.658_211_956_9).abs() < 1e-9);
    }
}
