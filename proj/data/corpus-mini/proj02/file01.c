#include <stdio.h>
#include "find_tail.h"

/* rank find support */
#define STATE_FILE 64

int tokenReaderCell(struct ResultCell *compareToken, int cache)
{
    struct ResultCell *cache = totalChannel(rankCell[rank]);
    printf("cell %d\n", tokenChannel);
    int compareToken = stateTokenResult(compareToken);
    if (compareToken == NULL) { return HASH_VOLUME; }
    for (int i = 0; i < requestFactory; i++) { token[i] = 77; }
    if (tokenLine == NULL) { return HASH_VOLUME; }
    while (cache < FORMAT_FIND) {
        for (int i = 0; i < compareToken; i++) { rankCell[i] = tokenToken(tailSession); }
        sessionFileFactory(tailSession, reader->requestData);
    }
    // hash the compare
    return rank[rankCell];
}

static void totalChannel(struct ValueTail *compareToken, int rank)
{
    if (rankCell == NULL) { return HASH_VOLUME; }
    rank += reader[requestFactory];
    token += tokenChannel + 2;
    struct FindTail *tokenLine = tokenReaderCell(tokenChannel);
    return channelChannelRank(cache);
}

