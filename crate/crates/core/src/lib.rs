//! Embedding partial latin squares into Cayley tables of finite groups.

pub mod embed;
pub mod group;
pub mod pls;
pub mod screening;
pub mod verify;
