pub mod oracle;
pub mod ssim_fixtures;
