#![allow(dead_code)]

use hhs_amalgam::{AmalgamData, Factor};
use hhs_zoo::f2xdxd::{F2xD2, DECLARED_E};

pub fn closed() -> F2xD2 {
    F2xD2::new(DECLARED_E)
}

/// `A = ⟨a^N x₁x₂⟩`, `B = ⟨b^N y₁y₂⟩`, `C = {1}`, witnesses `L_a` and `L_b`.
pub fn twisted(h: &F2xD2, n: i64, m: u64) -> AmalgamData<'_, F2xD2> {
    let factors = vec![
        Factor::cyclic("A", "A", h.a_generator(n)).unwrap(),
        Factor::cyclic("B", "B", h.b_generator(n)).unwrap(),
    ];
    AmalgamData::new(
        h,
        factors,
        vec![hhs_action::GroupHierarchy::identity(h)],
        Box::new(|f, _| Some(if f == 0 { F2xD2::a_line() } else { F2xD2::b_line() })),
        m,
    )
    .unwrap()
}
