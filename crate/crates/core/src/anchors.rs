//! Citation labels attached to every verdict the engine emits.

pub const VERY_AMPLE: &str = "Thm 2.3";
pub const PRIMALITY: &str = "Thm 2.3(3)";
pub const BETA_ESTIMATE: &str = "Thm 3.2(1)";
pub const GAMMA_ESTIMATE: &str = "Thm 3.2(2)";
pub const K_TWIST_BOUND: &str = "Thm 3.2 proof, h0(N(-H+K)) <= h1(T(-H+K))";
pub const GAMMA_EXACT_NORMAL: &str = "Prop 3.9(2) proof, h0(N(-H)) = M+1";
pub const GAMMA_SPECIAL_POINT: &str = "Thm 3.14 proof, h0(N(-H)) <= M+2 at (e,b)=(0,2)";

pub const LINE_COHOMOLOGY: &str = "Lemmas 3.4-3.7, pushforward to P^1";

pub const LEMMA_SECTION_TWIST: &str = "Lemma 3.4";
pub const LEMMA_FIBER_TWIST: &str = "Lemma 3.5";
pub const LEMMA_CANONICAL_TWIST: &str = "Lemma 3.6";
pub const LEMMA_DOUBLE_CANONICAL: &str = "Lemma 3.7";
pub const LEMMA_TANGENT: &str = "Lemma 3.8";

pub const BETA_ZERO_RANGES: &str = "Prop 3.9(1)";
pub const GAMMA_ZERO_RANGE: &str = "Prop 3.9(2)";
pub const HIGH_GENUS: &str = "Thm 3.10";
pub const PRIME_FAMILIES: &str = "Thm 3.10(5)";
pub const DOUBLE_COVER: &str = "Thm 3.13";
pub const LOW_GENUS: &str = "Thm 3.14";
pub const ALPHA_EQUALITY: &str = "Cor 4.9";
pub const MINUS_TWO_TWIST: &str = "Prop 4.1";
pub const CONE_TANGENT: &str = "Cor 4.4";
pub const CONE_TANGENT_SPECIAL: &str = "Cor 4.4(2)";
pub const ZAK_LVOVSKY: &str = "Thm 1.2";
pub const ZAK_LVOVSKY_K: &str = "Thm 1.2(2)";
pub const FANO_EMPTY: &str = "Thm 4.6(1)";
pub const FANO_INTEGRALITY: &str = "Thm 4.6 proof, d = 2(g-1)/r";
pub const FANO_IRREDUCIBLE: &str = "Thm 4.6(2)";
pub const MUKAI_EMPTY: &str = "Thm 4.8(1)";
pub const MUKAI_ADJUNCTION: &str = "Thm 4.8 proof, adjunction";
pub const MUKAI_IRREDUCIBLE: &str = "Thm 4.8(2)";
pub const MUKAI_TRIPLE_CONE: &str = "Thm 4.8 proof, triple cone = 405";
pub const HILBERT_COMPONENT: &str = "Thm 5.2, M = N + h0((a-2)C0+(b-e-2)f)";
