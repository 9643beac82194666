# Exact arithmetic core package
