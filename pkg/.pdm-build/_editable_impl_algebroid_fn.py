from editables.redirector import RedirectingFinder as F
F.install()
F.map_module('algebroid_fn', '/root/pkg/src/algebroid_fn/__init__.py')