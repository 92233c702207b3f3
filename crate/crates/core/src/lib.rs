pub mod certify;
pub mod conicbundle;
pub mod coversynth;
pub mod gf;
pub mod json;
pub mod p1curve;
pub mod poly;
