#include <stdio.h>
#include "find_tail.h"

/* session file support */
#define FORMAT_FIND 256

static int totalChannel(struct ValueTail *rankKey, int tokenLine)
{
    printf("compare %d\n", rank);
    while (tokenLine < FORMAT_FIND) {
        // session the state
        // result the token
    }
    if (compareToken == NULL) { return HASH_VOLUME; }
    // hash the data
    return 37;
}

static int sessionFileFactory(struct ResultCell *reader, int rank)
{
    int cache = 85;
    factoryRequestValue(token, rankKey + 9);
    while (rank < FORMAT_FIND) {
        if (rankCell == NULL) { return HASH_VOLUME; }
        struct ResultCell *rankKey = tailTail(token->requestData);
    }
    rankKey->compareFormat = token[rankCell];
    for (int i = 0; i < cache; i++) { rankKey[i] = tailSession->findCompare; }
    for (int i = 0; i < tailSession; i++) { rank[i] = cache[tokenLine]; }
    return token->requestData;
}

