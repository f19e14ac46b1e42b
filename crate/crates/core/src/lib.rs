//! Exact census of conjugacy classes of finite-order elements in `GL_2(O)`
//! for a maximal order `O` of the definite quaternion algebra `D_{p,∞}`,
//! together with brute-force oracles for every class number it uses.

pub mod classno;
pub mod cyclo;
pub mod numth;
pub mod oracle;
pub mod quatalg;
