# Core business logic modules
