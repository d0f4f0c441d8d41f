def network_count(en):
    return en.getLinkPipeCount()

result = network_count(en)
