pub mod bounds;
pub mod certify;
pub mod constants;
mod hypothesis;
pub mod verify;
