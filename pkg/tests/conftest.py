from hypothesis import settings

settings.register_profile("exact", deadline=None, max_examples=50)
settings.load_profile("exact")
