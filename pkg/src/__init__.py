# Permanental Ideals - Source Package
