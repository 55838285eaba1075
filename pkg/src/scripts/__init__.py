# Scripts module
