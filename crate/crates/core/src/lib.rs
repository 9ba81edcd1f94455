//! Triangles of groups over finite groups.

pub mod billiards;
pub mod catalog;
pub mod cli;
pub mod diagram;
pub mod group;
pub mod plane;
pub mod quadrat;
pub mod tits;
pub mod wallpaper;
pub mod witness;
