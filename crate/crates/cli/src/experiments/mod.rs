//! Experiment commands. Each returns plain rows/reports; writing them to
//! disk lives in [`crate::output`].

mod attack;
mod fig1;
mod fig23;
mod xeb;

pub use attack::{cmd_attack, AttackReport, McAttack, TruncationPoint};
pub use fig1::{cmd_fig1, Fig1Output, Fig1Row, Fig1Summary};
pub use fig23::{cmd_fig2_fig3, Fig23Output, Fig2Row, Fig3Row, TrajectoryRow};
pub use xeb::{cmd_xeb, XebReport};
